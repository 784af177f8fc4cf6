#include "fellgeom/fellbundle/groupoid.hpp"

#include <algorithm>
#include <set>

#include "fellgeom/lincore/types.hpp"

namespace fellgeom {

PairGroupoid::PairGroupoid(std::vector<std::string> objects) : objects_(std::move(objects)) {
    if (objects_.empty()) throw ValidationError("PairGroupoid: object list is empty");
    std::set<std::string> seen;
    for (const auto& id : objects_) {
        if (id.empty()) throw ValidationError("PairGroupoid: empty object id");
        if (!seen.insert(id).second) throw ValidationError("PairGroupoid: duplicate object id '" + id + "'");
    }
}

int PairGroupoid::index_of(const std::string& id) const {
    const auto it = std::find(objects_.begin(), objects_.end(), id);
    if (it == objects_.end()) throw ValidationError("PairGroupoid: unknown object '" + id + "'");
    return static_cast<int>(it - objects_.begin());
}

std::vector<Arrow> PairGroupoid::arrows() const {
    std::vector<Arrow> out;
    for (int r = 0; r < object_count(); ++r) {
        for (int s = 0; s < object_count(); ++s) out.push_back({r, s});
    }
    return out;
}

Arrow PairGroupoid::compose(Arrow first, Arrow second) const {
    if (!composable(first, second)) {
        throw ValidationError("PairGroupoid: arrows " + describe(first) + " and " + describe(second) +
                              " are not composable");
    }
    return {first.range, second.source};
}

std::string PairGroupoid::describe(Arrow a) const {
    return "(" + object(a.range) + "," + object(a.source) + ")";
}

PairGroupoid build_pair_groupoid(std::vector<std::string> object_ids) { return PairGroupoid(std::move(object_ids)); }

}  // namespace fellgeom
