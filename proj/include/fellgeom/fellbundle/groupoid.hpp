#pragma once

#include <compare>
#include <string>
#include <vector>

namespace fellgeom {

// Arrow (range <- source) of a pair groupoid, stored by object index.
struct Arrow {
    int range = 0;
    int source = 0;
    auto operator<=>(const Arrow&) const = default;
};

class PairGroupoid {
public:
    PairGroupoid() = default;
    explicit PairGroupoid(std::vector<std::string> objects);

    int object_count() const { return static_cast<int>(objects_.size()); }
    const std::string& object(int i) const { return objects_.at(static_cast<std::size_t>(i)); }
    const std::vector<std::string>& objects() const { return objects_; }
    int index_of(const std::string& id) const;

    // All n^2 arrows in lexicographic (range, source) order.
    std::vector<Arrow> arrows() const;

    static bool composable(Arrow first, Arrow second) { return first.source == second.range; }
    Arrow compose(Arrow first, Arrow second) const;
    static Arrow inverse(Arrow a) { return {a.source, a.range}; }
    static bool is_unit(Arrow a) { return a.range == a.source; }

    std::string describe(Arrow a) const;

private:
    std::vector<std::string> objects_;
};

PairGroupoid build_pair_groupoid(std::vector<std::string> object_ids);

}  // namespace fellgeom
