#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "weitz/liealg.hpp"
#include "weitz/matrix.hpp"
#include "weitz/rep.hpp"

namespace weitz::holctx {

enum class ContextKind { SO, SOSpin, U, SU3NK, G2, Sp1Spn };

std::string kind_name(ContextKind k);

/// Bivector coordinates: pairs (i<j) in lexicographic order.
size_t biv_dim(int m);
size_t pair_index(int m, int i, int j);
std::pair<int, int> index_pair(int m, size_t k);

/// Antisymmetric matrix of the bivector with coordinate vector c:
/// (e_i ^ e_j) acts as v -> g(e_i,v) e_j - g(e_j,v) e_i.
MatQ biv_matrix(int m, const std::vector<Rat>& coords);
std::vector<Rat> biv_coords(const MatQ& antisym);  // inverse of biv_matrix

/// Explicit pointwise holonomy data: hol in so(m) with a Lambda^2-orthogonal
/// rational basis (raw) plus its normalization, the orthonormal basis over
/// the field extension, the bivector-space projection onto hol, and the
/// weight-theoretic shadow (liealg spec, embedding scales).
struct HolonomyContext {
    ContextKind kind = ContextKind::SO;
    int m = 0;

    std::vector<MatQ> hol_raw;    // orthogonal, unnormalized, rational
    std::vector<Rat> hol_norm;    // squared Lambda^2 norms of hol_raw
    std::vector<MatQ> perp_raw;
    std::vector<Rat> perp_norm;
    std::vector<MatS> hol_basis;  // orthonormal over Q(i,r2,r3)
    std::vector<MatS> perp_basis;

    MatQ pr_hol_matrix;           // on bivector coordinates, dim C(m,2)

    liealg::LieAlgebraSpec spec;
    std::vector<Rat> factor_scales;                   // embedding scale per factor
    std::vector<std::vector<size_t>> factor_indices;  // raw-basis indices per factor

    liealg::HighestWeight t_weight;                // weight used for calibration
    std::map<std::vector<long>, long> t_weights;   // complexified weights of T

    std::vector<MatS> clifford;   // gamma matrices when spin-enabled
    MatQ complex_structure;       // J for U(n)/SU(3); empty otherwise

    size_t dim_hol() const { return hol_raw.size(); }
    size_t dim_perp() const { return perp_raw.size(); }
    bool spin_enabled() const { return !clifford.empty(); }
    bool has_complex_structure() const { return !complex_structure.empty(); }

    /// T as a matrix representation of this context (action of the raw basis).
    MatrixRep tangent_rep() const;

    /// pr_hol applied to an antisymmetric matrix, returned as a matrix.
    MatQ project_matrix(const MatQ& bivector) const;

    std::string name() const;
};

/// Builds a context. param means: m for SO/SOSpin/G2, n for U (m=2n) and
/// Sp1Spn (m=4n); ignored-but-checked 6 for SU3NK, 7 for G2.
std::shared_ptr<const HolonomyContext> build_context(ContextKind kind, int param);

/// Coefficients of pr_hol(bivector) with respect to the orthonormal hol basis;
/// the residual bivector - sum c_a X_a is orthogonal to hol.
std::vector<Scalar> project_to_hol(const HolonomyContext& ctx, const MatQ& bivector);

/// One isotypic component of T (x) V.
struct IsotypicComponent {
    liealg::HighestWeight label;
    bool merged_with_dual = false;  // real form of a conjugate pair
    MatS projector;                 // on T (x) V
    size_t dim = 0;                 // dimension of the component subspace
    long multiplicity = 0;
    Rat casimir;                    // Lambda^2 Casimir on the component
};

/// Complete exact isotypic decomposition of T (x) V (T-slot first).
std::vector<IsotypicComponent> gradient_targets(const HolonomyContext& ctx,
                                                const MatrixRep& rep);

/// Generic splitter: isotypic components of the space carried by `action`
/// (one matrix per raw hol basis element) with the given complexified weight
/// multiset. Used for T (x) V and for curvature spaces.
std::vector<IsotypicComponent> split_isotypic(const HolonomyContext& ctx,
                                              const std::vector<MatS>& action,
                                              const std::map<std::vector<long>, long>& weights);

struct ConformalWeightEntry {
    IsotypicComponent component;
    Rat b;                      // conformal weight (matrix eigenvalue)
    Rat weitzenboeck_coeff;     // 1 - b
    bool casimir_formula_ok;    // b equals (cas_e - cas_V - cas_T)/2
};

struct ConformalWeightTable {
    MatS B_matrix;  // on T (x) V
    std::vector<ConformalWeightEntry> entries;
};

/// Conformal weight operator B and its eigenvalues on each isotypic
/// component, with the Casimir-difference cross-check.
ConformalWeightTable conformal_weights(const HolonomyContext& ctx, const MatrixRep& rep);

/// Lambda^2 Casimir operator of hol acting through the given representation:
/// -sum_a (Y_a*)^2 / n_a. If factor >= 0, only that factor's basis is summed.
MatS casimir_operator(const HolonomyContext& ctx, const std::vector<MatS>& action,
                      int factor = -1);

/// Checks bracket closure of the action against the context (MatrixRep
/// invariant); throws structural_error on failure.
void check_bracket_compatibility(const HolonomyContext& ctx, const MatrixRep& rep);

}  // namespace weitz::holctx
