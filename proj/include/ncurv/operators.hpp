#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ncurv/fock_vector.hpp"
#include "ncurv/generator.hpp"
#include "ncurv/matrix.hpp"

namespace ncurv {

template <class S>
class RowContraction;

/// n matrices of shape dim x dim. Model vectors use the copy index as the
/// coordinate and the empty word.
template <class S>
struct DenseTuple {
    std::size_t dim = 0;
    std::vector<Matrix<S>> mats;
};

/// alpha copies of the left creation operators L_i xi_w = xi_{iw}.
struct LeftRegular {
    std::uint32_t alpha = 1;
};

/// Ring u = u[0] ... u[d-1] with decay factors lambda_s. Model label (s, w)
/// requires w not to end in u[s].
///   A_{u[s]} xi_{s,e} = lambda_s xi_{s+1,e};  A_i xi_{s,e} = xi_{s,i} (i != u[s]);
///   A_i xi_{s,w} = xi_{s,iw} (w != e).
/// moduli[s] = |lambda_s|^2 is always known; lambda itself may be unavailable in
/// the exact backend when it is irrational.
template <class S>
struct DecayingAtomic {
    Word ring;
    std::vector<RealOf<S>> moduli;
    std::optional<std::vector<S>> lambda;
};

/// complement: A_i = P_S L_i |_S with S the orthocomplement of the orbit span
///             N of the generators (a co-invariant subspace).
/// invariant:  A_i = L_i |_N, the restriction to the orbit span.
enum class Orientation { complement, invariant };

template <class S>
struct Compression {
    std::uint32_t alpha = 1;
    std::vector<Generator<S>> generators;
    Orientation orientation = Orientation::complement;

    /// True when every generator is homogeneous.
    bool graded() const;
    /// Largest generator degree (graded compressions only).
    std::size_t max_degree() const;
};

/// Coordinate-wise direct sum; copies of `second` follow those of `first`.
template <class S>
struct DirectSum {
    std::shared_ptr<const RowContraction<S>> first;
    std::shared_ptr<const RowContraction<S>> second;
};

/// B_j = sum_i A_i U_ij.
template <class S>
struct UnitaryMix {
    std::shared_ptr<const RowContraction<S>> base;
    Matrix<S> unitary;
};

template <class S>
class RowContraction {
public:
    using Model = std::variant<DenseTuple<S>, LeftRegular, DecayingAtomic<S>, Compression<S>, DirectSum<S>, UnitaryMix<S>>;

    RowContraction(int n, Model model);

    int n() const { return n_; }
    const Model& model() const { return model_; }

    /// Number of copy indices used by model vectors.
    std::uint32_t copies() const;

    /// "dense", "left_regular", "decaying_atomic", "compression", "direct_sum" or "unitary_mix".
    std::string kind() const;

    template <class T>
    const T* as() const {
        return std::get_if<T>(&model_);
    }

private:
    int n_;
    Model model_;
};

struct ContractionReport {
    bool ok = false;
    double max_eigenvalue = 0.0;
};

/// lambda_max(sum A_i A_i^*) <= 1 (exactly in the exact backend; +tol in float).
template <class S>
ContractionReport validate_row_contraction(const std::vector<Matrix<S>>& mats, double tol);

template <class S>
RowContraction<S> make_dense(std::vector<Matrix<S>> mats, double tol = 1e-9);

template <class S>
RowContraction<S> make_left_regular(int n, std::uint32_t alpha = 1);

template <class S>
RowContraction<S> make_decaying_atomic(int n, const Word& ring, std::vector<S> lambda);

/// Atomic representation specified by r_s = |lambda_s|^2 only.
template <class S>
RowContraction<S> make_decaying_atomic_moduli(int n, const Word& ring, std::vector<RealOf<S>> moduli);

/// Checks the wandering property to `depth` before returning.
template <class S>
RowContraction<S> make_compression(int n, std::uint32_t alpha, std::vector<Generator<S>> generators, Orientation orientation,
                                   std::size_t depth = 8, double tol = 1e-9);

template <class S>
RowContraction<S> direct_sum(const RowContraction<S>& a, const RowContraction<S>& b);

/// Dense tuples are mixed into a new dense tuple; other models keep a mix node.
template <class S>
RowContraction<S> unitary_mix(const RowContraction<S>& a, const Matrix<S>& u, double tol = 1e-9);

struct ApplyOptions {
    /// Longest word kept when a projection produces an infinitely supported vector.
    std::size_t ray_depth = 24;
    /// Membership tolerance in the float backend.
    double tol = 1e-9;
};

/// A_i x (i is 1-based). Compression outputs are exact for finitely supported
/// generators and truncated at ray_depth otherwise.
template <class S>
FockVector<S> apply(const RowContraction<S>& a, int i, const FockVector<S>& x, const ApplyOptions& opt = {});

/// A_i^* x (i is 1-based).
template <class S>
FockVector<S> apply_adjoint(const RowContraction<S>& a, int i, const FockVector<S>& x, const ApplyOptions& opt = {});

/// Throws ModelMismatch when x is not a vector of a's model.
template <class S>
void check_in_model(const RowContraction<S>& a, const FockVector<S>& x, const ApplyOptions& opt = {});

/// P_N x for the orbit span N of the generators, keeping words of length <= max_len.
template <class S>
FockVector<S> project_onto_orbits(const std::vector<Generator<S>>& gens, const FockVector<S>& x, std::size_t max_len);

/// <P_N xi_col, xi_row>.
template <class S>
S orbit_projection_entry(const std::vector<Generator<S>>& gens, const Label& row, const Label& col);

/// |P_N xi_w|^2 = sum_j sum_{v prefix of w} |zeta_j(w/v)|^2 / |zeta_j|^2.
template <class S>
RealOf<S> orbit_projection_norm2(const std::vector<Generator<S>>& gens, const Label& w);

/// Exact (or tolerance-checked) U^* U = I.
template <class S>
bool is_unitary(const Matrix<S>& u, double tol);

}  // namespace ncurv
