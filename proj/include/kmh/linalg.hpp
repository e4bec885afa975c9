#pragma once

// Dense exact linear algebra over Q (row reduction, kernels, spans).

#include "kmh/core.hpp"

#include <optional>
#include <vector>

namespace kmh {

using QVec = std::vector<Q>;
using QMat = std::vector<QVec>;  // row-major

QMat zero_matrix(std::size_t rows, std::size_t cols);
QMat identity_matrix(std::size_t n);
QMat to_qmat(const IMat& m);

QMat mat_mul(const QMat& a, const QMat& b);
QVec mat_vec(const QMat& a, const QVec& v);
QMat transpose(const QMat& a);
QMat mat_add(const QMat& a, const QMat& b);
QMat mat_scale(const QMat& a, const Q& c);
bool is_zero(const QVec& v);

/// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(QMat& m);

std::size_t rank(QMat m);

/// Basis of {x : A x = 0}; `cols` is needed when A has no rows.
std::vector<QVec> nullspace(const QMat& a, std::size_t cols);

/// Some x with A x = b, or nullopt.
std::optional<QVec> solve(const QMat& a, const QVec& b);

std::optional<QMat> inverse(const QMat& a);

/// Row-reduced basis of span(vectors), all of dimension `dim`.
std::vector<QVec> span_basis(const std::vector<QVec>& vectors, std::size_t dim);

bool in_span(const std::vector<QVec>& vectors, const QVec& v);

/// Basis of span(a) ∩ span(b).
std::vector<QVec> span_intersection(const std::vector<QVec>& a, const std::vector<QVec>& b,
                                    std::size_t dim);

/// Kernel of A restricted to the subspace spanned by `basis` (returned in ambient coordinates).
std::vector<QVec> kernel_on(const QMat& a, const std::vector<QVec>& basis, std::size_t dim);

}  // namespace kmh
