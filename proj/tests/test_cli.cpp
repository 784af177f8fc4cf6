#include <algorithm>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "fellgeom/cli/commands.hpp"
#include "fellgeom/cli/config.hpp"
#include "fellgeom/cli/model.hpp"
#include "fellgeom/constraints/exclusions.hpp"
#include "fellgeom/lincore/linalg.hpp"
#include "fellgeom/lincore/random.hpp"

using namespace fellgeom;
using namespace fellgeom::cli;

namespace {

std::vector<std::string> bundled() {
    std::vector<std::string> names;
    for (const auto& e : std::filesystem::directory_iterator(FELLGEOM_TEST_CONFIG_DIR))
        if (e.path().extension() == ".yaml") names.push_back(e.path().stem().string());
    std::sort(names.begin(), names.end());
    return names;
}

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::string& cmd, const std::string& config, Flags f = {}) {
    std::ostringstream out, err;
    const int code = run_subcommand(cmd, config, f, out, err);
    return {code, out.str(), err.str()};
}

int error_line(const std::string& text) {
    try {
        parse_config(text, "t.yaml");
    } catch (const ConfigError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("bundled example geometries") {
    const GeometryConfig e2 = load_config("example2_quarks");
    REQUIRE(e2.objects.size() == 4);
    CHECK(e2.objects[0].labels == std::vector<std::string>{"u_L", "d_L"});
    const Model m2 = build_model(e2);
    CHECK(m2.partition.sizes() == std::vector<int>{2, 2, 2, 2});

    const GeometryConfig e3 = load_config("example3_sm1gen");
    REQUIRE(e3.objects.size() == 8);
    std::vector<int> fibers;
    for (const auto& o : e3.objects) fibers.push_back(o.fiber);
    CHECK(fibers == std::vector<int>{2, 1, 3, 3, 2, 1, 1, 1});
    const Model all = build_model(e3, "all");
    CHECK(all.dimension() == 24 + 6);
    CHECK(build_model(e3).sector == "quark");
    CHECK(build_model(e3, "lepton").dimension() == 6);
}

TEST_CASE("every bundled config round-trips through the canonical form") {
    const auto names = bundled();
    CHECK(names.size() >= 14);
    for (const auto& name : names) {
        const GeometryConfig c = load_config(name);
        const std::string canonical = emit_config(c);
        CHECK_MESSAGE(parse_config(canonical) == c, name);
        CHECK_MESSAGE(emit_config(parse_config(canonical)) == canonical, name);
    }
}

TEST_CASE("schema errors carry a line") {
    try {
        parse_config("", "empty.yaml");
        FAIL("expected an error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("missing required key 'name'") != std::string::npos);
        CHECK(e.line() == 1);
    }
    CHECK(error_line("name: x\nobjects:\n  - {id: a, fiber: 0}\n") == 3);
    CHECK(error_line("name: x\nobjects:\n  - {id: a}\ncolour: red\n") == 4);
    CHECK(error_line("name: x\nobjects:\n  - {id: a, fiber: 1}\n  - {id: a, fiber: 1}\n") == 4);
    CHECK(error_line("name: x\nobjects:\n  - {id: a, fiber: 1}\n  - {id: b, fiber: 1}\n  - {id: c, fiber: 1}\n"
                     "real_structure:\n  kind: permutation\n  swaps: [[0, 1], [1, 2]]\n") >= 6);
    CHECK(error_line("name: x\nobjects: [{id: a, fiber: 1}]\ndirac: {kind: matrix, matrix: [[\"1+\"]]}\n") == 3);
}

TEST_CASE("complex number syntax") {
    CHECK(parse_complex("1.5-0.5i") == Complex(1.5, -0.5));
    CHECK(parse_complex("-i") == Complex(0.0, -1.0));
    CHECK(parse_complex("2e-3+1e2i") == Complex(2e-3, 1e2));
    CHECK(parse_complex("3") == Complex(3.0, 0.0));
    CHECK_THROWS(parse_complex("abc"));
    for (Complex z : {Complex(1.5, -0.5), Complex(0.0, 2.0), Complex(-0.1, 0.0), Complex(1e-300, 3.0)})
        CHECK(parse_complex(format_complex(z)) == z);
}

TEST_CASE("mixing is excluded on the eight-object geometry") {
    const Model m = build_model(load_config("example3_sm1gen"), "all");
    REQUIRE(m.bundle.has_value());
    const MixingReport r = check_sector_mixing(*m.bundle, m.roles, m.basis_sectors, m.object_chi);
    CHECK_FALSE(r.vacuous);
    CHECK(r.mass_bearing >= 1);
    CHECK_FALSE(r.mixing_possible);

    const Model merged = build_model(load_config("merged_sectors"), "all");
    const MixingReport neg = check_sector_mixing(*merged.bundle, merged.roles, merged.basis_sectors, merged.object_chi);
    CHECK(neg.mixing_possible);
    CHECK_FALSE(neg.offending.empty());
}

TEST_CASE("accepted Dirac sections of even triples anticommute with the grading") {
    for (const char* name : {"example2_quarks", "example3_sm1gen"}) {
        const Model m = build_model(load_config(name), "all");
        REQUIRE(m.chi.has_value());
        const Matrix g = m.chi->matrix();
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const Matrix d = build_dirac(m, seed);
            CHECK(is_dirac_section(d, m.partition, &*m.j).accepted);
            CHECK(op_norm(d * g + g * d) <= 1e-12 * op_norm(d));
        }
    }
}

TEST_CASE("Dirac operator plus a (x) b^opp stays in the product fibers") {
    const Model m = build_model(load_config("example3_sm1gen"), "quark");
    Rng rng(3);
    const Matrix d = build_dirac(m, 5);
    for (int k = 0; k < 5; ++k) {
        const AlgebraElement a = AlgebraElement::random(m.rep->algebra(), rng);
        const AlgebraElement b = AlgebraElement::random(m.rep->algebra(), rng);
        const Matrix x = d + m.rep->embed(a) * opposite_action(b, *m.j, *m.rep);
        for (int i = 0; i < m.partition.block_count(); ++i)
            for (int j = 0; j < m.partition.block_count(); ++j) {
                const Matrix blk = m.partition.block(x, i, j);
                if (blk.norm() == 0.0) continue;
                CHECK(m.bundle->product_fiber(i, j).residual(blk) < 1e-10);
            }
    }
}

TEST_CASE("first-order Dirac operators of the example triples pass every axiom") {
    for (const char* name : {"example2_quarks", "example3_sm1gen"}) {
        const Model m = build_model(load_config(name), "all");
        const TripleReport r = check_axioms(build_triple(m, build_dirac(m, 2)), 300, 2);
        CHECK_MESSAGE(r.all_passed(), name);
    }
}

TEST_CASE("exit codes") {
    CHECK(run("check", "two_point").code == kSuccess);
    CHECK(run("check", "corrupt_bundle").code == kVerificationFailure);
    CHECK(run("frobnicate", "two_point").code == kUsageError);
    CHECK(run("check", "no_such_config").code == kUsageError);
    Flags f;
    f.mode = "trace";
    CHECK(run("check", "two_point", f).code == kUsageError);
    f = {};
    f.function = "exp";
    CHECK(run("action", "two_point", f).code == kUsageError);
    f = {};
    f.sector = "gluon";
    CHECK(run("enumerate", "example3_sm1gen", f).code == kUsageError);
}

TEST_CASE("reports are deterministic and name what they reproduce") {
    for (const auto& cmd : subcommand_names()) {
        const std::string config = cmd == "flow" || cmd == "kms"         ? "m2_point"
                                   : cmd == "sample" || cmd == "partition" ? "pair2_line"
                                   : cmd == "generate-dims"               ? "pair2_line"
                                   : cmd == "distance"                    ? "two_point"
                                                                          : "example2_quarks";
        Flags f;
        f.steps = 500;
        f.samples = cmd == "check" ? 50 : 10;
        const Run a = run(cmd, config, f), b = run(cmd, config, f);
        CHECK_MESSAGE(a.code == kSuccess, cmd << ": " << a.err << a.out);
        CHECK(a.out == b.out);
        CHECK(a.out.find("reproduces: ") != std::string::npos);
        CHECK(a.out.find("status: ok") != std::string::npos);
    }
}

}  // TEST_SUITE
