#include "fellgeom/triple/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fellgeom/lincore/linalg.hpp"
#include "fellgeom/lincore/parallel.hpp"

namespace fellgeom {

namespace {

// Smoothed spectral norm of H(z) = a0 + sum z_j m_j (all Hermitian):
// mu * log sum_i (exp(l_i / mu) + exp(-l_i / mu)).
class SmoothedNorm {
public:
    SmoothedNorm(Matrix a0, std::vector<Matrix> m) : a0_(std::move(a0)), m_(std::move(m)) {}

    Matrix at(const RealVector& z) const {
        Matrix h = a0_;
        for (std::size_t j = 0; j < m_.size(); ++j) h += z(static_cast<Eigen::Index>(j)) * m_[j];
        return h;
    }

    double value_and_gradient(const RealVector& z, double mu, RealVector& grad) const {
        const Matrix h = at(z);
        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        const RealVector& l = es.eigenvalues();
        const double s = l.cwiseAbs().maxCoeff();
        RealVector w(l.size());
        double total = 0.0;
        for (Eigen::Index i = 0; i < l.size(); ++i) {
            const double p = std::exp((l(i) - s) / mu), q = std::exp((-l(i) - s) / mu);
            total += p + q;
            w(i) = p - q;
        }
        w /= total;
        const Matrix weighted = es.eigenvectors() * w.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
        grad.resize(static_cast<Eigen::Index>(m_.size()));
        for (std::size_t j = 0; j < m_.size(); ++j) {
            grad(static_cast<Eigen::Index>(j)) = (weighted * m_[j]).trace().real();
        }
        return s + mu * std::log(total);
    }

    int dimension() const { return static_cast<int>(m_.size()); }

private:
    Matrix a0_;
    std::vector<Matrix> m_;
};

RealVector bfgs(const SmoothedNorm& f, RealVector z, double mu) {
    const Eigen::Index p = z.size();
    RealMatrix hinv = RealMatrix::Identity(p, p);
    RealVector g;
    double fz = f.value_and_gradient(z, mu, g);
    for (int iter = 0; iter < 400; ++iter) {
        if (g.norm() < 1e-14) break;
        RealVector dir = -hinv * g;
        if (dir.dot(g) >= 0.0) {
            hinv.setIdentity();
            dir = -g;
        }
        double step = 1.0;
        RealVector gn;
        RealVector zn;
        double fn = 0.0;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            zn = z + step * dir;
            fn = f.value_and_gradient(zn, mu, gn);
            if (fn <= fz + 1e-4 * step * g.dot(dir)) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
        const RealVector s = zn - z, y = gn - g;
        const double sy = s.dot(y);
        if (sy > 1e-300) {
            const double rho = 1.0 / sy;
            const RealMatrix id = RealMatrix::Identity(p, p);
            hinv = (id - rho * s * y.transpose()) * hinv * (id - rho * y * s.transpose()) + rho * s * s.transpose();
        }
        const double decrease = fz - fn;
        z = zn;
        g = gn;
        fz = fn;
        if (decrease < 1e-16 * std::max(1.0, std::abs(fz)) && s.norm() < 1e-12) break;
    }
    return z;
}

}  // namespace

DistanceResult connes_distance(const Representation& rep, const Matrix& d, const StateFunctional& omega1,
                               const StateFunctional& omega2, const DistanceOptions& options) {
    const int n = rep.space().dimension();
    if (d.rows() != n || d.cols() != n) throw ValidationError("connes_distance: D does not act on H");
    if (omega1.dimension() != n || omega2.dimension() != n) throw ValidationError("connes_distance: states do not act on H");
    if (!is_hermitian(d, options.tol)) throw ValidationError("connes_distance: D is not Hermitian");
    if (options.restarts < 1 || options.agreement < 1 || options.agreement > options.restarts) {
        throw ValidationError("connes_distance: invalid restart settings");
    }

    DistanceResult result;
    const auto basis = hermitian_basis(rep.algebra());
    const Eigen::Index k = static_cast<Eigen::Index>(basis.size());
    std::vector<Matrix> pa, comm;
    RealVector g(k);
    RealMatrix linear(2 * n * n, k);
    for (Eigen::Index c = 0; c < k; ++c) {
        pa.push_back(rep.embed(basis[static_cast<std::size_t>(c)]));
        comm.push_back(Complex(0, 1) * commutator(d, pa.back()));
        g(c) = (omega1(pa.back()) - omega2(pa.back())).real();
        linear.col(c) = realify(comm.back());
    }

    const double gscale = g.norm();
    if (gscale <= options.tol) {
        result.distance = 0.0;
        result.maximizer = Matrix::Zero(n, n);
        result.agreeing_restarts = options.restarts;
        result.restart_values.assign(static_cast<std::size_t>(options.restarts), 0.0);
        return result;
    }

    // Directions with [D, a] = 0 make the supremum infinite unless the states agree on them.
    Eigen::BDCSVD<RealMatrix> svd(linear, Eigen::ComputeFullV);
    const RealVector& sigma = svd.singularValues();
    const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > 1e-10 * std::max(smax, 1e-300) && smax > 0.0) ++rank;
    }
    const RealMatrix& v = svd.matrixV();
    const RealMatrix kernel = v.rightCols(k - rank);
    if (kernel.cols() > 0 && (kernel.transpose() * g).norm() > 1e-9 * gscale) {
        result.unbounded = true;
        result.distance = std::numeric_limits<double>::infinity();
        return result;
    }

    const RealMatrix w = v.leftCols(rank);
    const RealVector gw = w.transpose() * g;
    const RealVector y0 = gw / gw.squaredNorm();
    auto comm_of = [&](const RealVector& coeffs) {
        Matrix out = Matrix::Zero(n, n);
        const RealVector full = w * coeffs;
        for (Eigen::Index c = 0; c < k; ++c) out += full(c) * comm[static_cast<std::size_t>(c)];
        return out;
    };
    const Matrix a0 = comm_of(y0);
    const double scale = op_norm(a0);

    // Free directions orthogonal to gw inside the complement of the kernel.
    RealMatrix z;
    {
        RealMatrix proj = RealMatrix::Identity(rank, rank) - gw * gw.transpose() / gw.squaredNorm();
        z = column_span(proj, 1e-10);
    }
    std::vector<Matrix> mdir;
    for (Eigen::Index j = 0; j < z.cols(); ++j) mdir.push_back(comm_of(z.col(j)) / scale);
    const SmoothedNorm f(a0 / scale, mdir);

    auto point_coeffs = [&](const RealVector& zz) { return RealVector(y0 + z * zz); };
    std::vector<RealVector> finals(static_cast<std::size_t>(options.restarts));
    result.restart_values.assign(static_cast<std::size_t>(options.restarts), 0.0);
    parallel_chunks(options.restarts, [&](int r) {
        RealVector zz = RealVector::Zero(z.cols());
        if (z.cols() > 0) {
            Rng rng = Rng::stream(options.seed, static_cast<std::uint64_t>(r));
            zz = rng.real_normal(z.cols()) * (r == 0 ? 0.0 : 1.0);
            for (double mu = 1e-1; mu >= 1e-10; mu *= 0.1) zz = bfgs(f, zz, mu);
        }
        finals[static_cast<std::size_t>(r)] = zz;
        result.restart_values[static_cast<std::size_t>(r)] = 1.0 / (scale * op_norm(f.at(zz)));
    });

    const auto best_it = std::max_element(result.restart_values.begin(), result.restart_values.end());
    const double best = *best_it;
    result.distance = best;
    result.agreeing_restarts = static_cast<int>(std::count_if(
        result.restart_values.begin(), result.restart_values.end(),
        [&](double x) { return std::abs(x - best) <= options.agreement_tol * std::max(1.0, best); }));
    result.converged = result.agreeing_restarts >= options.agreement;

    const RealVector coeffs = w * point_coeffs(finals[static_cast<std::size_t>(best_it - result.restart_values.begin())]);
    Matrix a = Matrix::Zero(n, n);
    for (Eigen::Index c = 0; c < k; ++c) a += coeffs(c) * pa[static_cast<std::size_t>(c)];
    const double cn = op_norm(commutator(d, a));
    result.maximizer = cn > 0.0 ? Matrix(a / cn) : a;
    return result;
}

}  // namespace fellgeom
