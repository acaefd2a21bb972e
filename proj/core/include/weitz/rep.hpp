#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "weitz/liealg.hpp"
#include "weitz/matrix.hpp"

namespace weitz {

namespace holctx {
struct HolonomyContext;
}

/// Pointwise model of a geometric vector bundle fiber: the holonomy action on
/// a representation V, one matrix per raw (orthogonal, unnormalized) basis
/// element of hol. The normalized action of the Lambda^2-orthonormal basis
/// element X_a = Y_a/sqrt(n_a) is action[a]/sqrt(n_a).
struct MatrixRep {
    const holctx::HolonomyContext* ctx = nullptr;
    size_t dim = 0;
    std::vector<MatS> action;                  // raw-basis action
    std::string label;
    std::map<std::vector<long>, long> weights;  // complexified weight multiset

    bool rational_entries() const {
        for (const auto& a : action)
            for (size_t i = 0; i < a.rows(); ++i)
                for (size_t j = 0; j < a.cols(); ++j)
                    if (!a(i, j).is_rational()) return false;
        return true;
    }

    std::vector<MatQ> rational_action() const {
        std::vector<MatQ> out;
        out.reserve(action.size());
        for (const auto& a : action) out.push_back(to_rational(a));
        return out;
    }
};

}  // namespace weitz
