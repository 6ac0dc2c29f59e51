// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
/**
 * @file
 * Dense complex-matrix primitives.  Matrices are Eigen objects; this header
 * adds the few decompositions the pipeline needs with explicit tolerances.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "mpuforge/errors.hpp"

namespace mpuforge {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Default relative tolerance for rank, PSD and Hermiticity decisions.
inline constexpr double kDefaultTol = 1e-10;

struct SvdResult {
    CMatrix u;               ///< isometric columns
    RVector singular_values; ///< non-negative, descending
    CMatrix v;               ///< isometric columns; m = u diag(s) v^dagger
};

/// Kronecker product; the index of @p a is the slow (major) index.
CMatrix kron(const CMatrix &a, const CMatrix &b);

/// Thin SVD with singular values sorted in descending order.
SvdResult svd(const CMatrix &m);

/// Hermitian PSD square root.  Eigenvalues in [-tol*scale, 0) are clamped to zero,
/// where scale = max(1, largest |eigenvalue|).
CMatrix sqrtm_psd(const CMatrix &m, double tol = kDefaultTol);

/// Sum of singular values.
double trace_norm(const CMatrix &m);

/// Number of singular values strictly above rel_tol * s_max (0 for the zero matrix).
std::size_t numerical_rank(const CMatrix &m, double rel_tol = kDefaultTol);

/// Largest absolute entry.
double max_abs(const CMatrix &m);

/// max |U^dagger U - 1| entry.
double unitarity_residual(const CMatrix &u);

/// Phase-invariant distance 1 - |Tr(U^dagger V)| / dim between equally sized operators.
double phase_invariant_distance(const CMatrix &u, const CMatrix &v);

/// max |v - e^{i phi} u| with the phase taken from Tr(u^dagger v).
double phase_aligned_error(const CMatrix &u, const CMatrix &v);

/// Throws ShapeError unless @p m is square.
void require_square(const CMatrix &m, const char *what);

/// Throws ValidationError if any entry is NaN or infinite.
void require_finite(const CMatrix &m, const char *what);

/**
 * Unitary whose first columns equal the orthonormal columns of @p v.
 * The completion of the remaining columns is arbitrary but deterministic.
 */
CMatrix complete_to_unitary(const CMatrix &v);

/// Unitary phase * (1 - 2 v v^dagger) with unit (or zero) vector v.
struct Reflector {
    CVector v;
    cplx phase{1.0, 0.0};
    [[nodiscard]] Eigen::Index dim() const { return v.size(); }
    [[nodiscard]] CMatrix matrix() const;
    /// Applies the reflector to every column of x in place.
    void apply(CMatrix &x) const;
};

/// Reflector R with R e_0 = t for a unit vector t (numerically stable choice).
Reflector reflector_to(const CVector &t);

/// Inverse of a Hermitian positive-definite matrix via eigendecomposition; throws
/// PreconditionError when an eigenvalue is below tol * lambda_max.
CMatrix inverse_hermitian_pd(const CMatrix &m, double tol = kDefaultTol);

} // namespace mpuforge
