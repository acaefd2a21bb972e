#pragma once

#include <map>
#include <string>
#include <vector>

#include "weitz/matrix.hpp"
#include "weitz/rational.hpp"

namespace weitz::liealg {

enum class Family { A, B, C, D, G2 };

struct Factor {
    Family family;
    int rank;
};

/// Root data of one simple factor in an orthogonal-coordinate realization
/// (A_n in R^{n+1}, B/C/D_n in R^n, G2 in the sum-zero hyperplane of R^3).
/// The invariant form is the coordinate dot product; Casimir values computed
/// against it are rescaled per context by the holonomy embedding scale.
struct RootSystem {
    Factor factor;
    int coord_dim = 0;
    std::vector<std::vector<Rat>> simple_roots;
    std::vector<std::vector<Rat>> positive_roots;
    std::vector<std::vector<Rat>> fundamental_weights;
    std::vector<Rat> rho;
    MatQ cartan;  // cartan(i,j) = 2<a_i,a_j>/<a_j,a_j>

    std::vector<Rat> weight_coords(const std::vector<long>& fund) const;
    std::vector<long> coords_to_fund(const std::vector<Rat>& coords) const;
};

const RootSystem& root_system(const Factor& f);

struct HighestWeight {
    std::vector<long> coords;  // fundamental-weight basis, one block per factor

    friend bool operator==(const HighestWeight& a, const HighestWeight& b) {
        return a.coords == b.coords;
    }
    friend bool operator<(const HighestWeight& a, const HighestWeight& b) {
        return a.coords < b.coords;
    }
};

struct LieAlgebraSpec {
    std::vector<Factor> factors;
    std::vector<int> fundamental_weight_order;  // permutation; identity by default

    int total_rank() const;
    /// Slice of a concatenated weight belonging to factor f.
    std::vector<long> factor_block(const HighestWeight& hw, size_t f) const;

    std::string name() const;
    static LieAlgebraSpec make(std::vector<Factor> factors);
    /// Parses names like "G2", "B3", "A1xA1", "C1xC2".
    static LieAlgebraSpec parse(const std::string& name);
};

struct Decomposition {
    std::vector<std::pair<HighestWeight, long>> summands;  // sorted lex by coords
};

void validate_weight(const LieAlgebraSpec& spec, const HighestWeight& hw);

/// Weyl dimension formula, evaluated exactly.
mpz_class weyl_dim(const LieAlgebraSpec& spec, const HighestWeight& hw);

/// <lambda, lambda + 2 rho> in the coordinate form, per factor.
Rat casimir_form_factor(const LieAlgebraSpec& spec, size_t f, const HighestWeight& hw);

/// Casimir eigenvalue in Lambda^2-normalization: sum over factors of the
/// coordinate-form value rescaled by the per-factor embedding scale.
Rat casimir_l2(const LieAlgebraSpec& spec, const HighestWeight& hw,
               const std::vector<Rat>& factor_scales);
Rat casimir_l2(const LieAlgebraSpec& spec, const HighestWeight& hw, const Rat& scale);

/// Exact multiset of irreducible constituents of V(hw1) (x) V(hw2), by the
/// Klimyk algorithm over the full weight system of the smaller tensorand.
Decomposition tensor_decompose(const LieAlgebraSpec& spec, const HighestWeight& hw1,
                               const HighestWeight& hw2);

/// Highest weight of the dual representation, -w0(hw).
HighestWeight dual_hw(const LieAlgebraSpec& spec, const HighestWeight& hw);

/// Full weight system with multiplicities (Freudenthal), fundamental coords.
std::map<std::vector<long>, long> weight_system(const LieAlgebraSpec& spec,
                                                const HighestWeight& hw);

/// Decomposes a virtual-character weight multiset into irreducibles by
/// repeatedly stripping a dominance-maximal weight. Throws if the multiset is
/// not a genuine nonnegative combination.
Decomposition decompose_by_weights(const LieAlgebraSpec& spec,
                                   std::map<std::vector<long>, long> weights);

/// Multiplicity of hw inside the multiset decomposition of V(hw1) (x) V(hw2).
long tensor_multiplicity(const LieAlgebraSpec& spec, const HighestWeight& hw1,
                         const HighestWeight& hw2, const HighestWeight& hw);

mpz_class total_dimension(const LieAlgebraSpec& spec, const Decomposition& d);

/// Pointwise-sum product of two weight multisets (weights of a tensor product).
std::map<std::vector<long>, long> weight_multiset_product(
    const std::map<std::vector<long>, long>& a, const std::map<std::vector<long>, long>& b);

}  // namespace weitz::liealg
