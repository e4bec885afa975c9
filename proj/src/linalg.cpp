#include "kmh/linalg.hpp"

namespace kmh {

QMat zero_matrix(std::size_t rows, std::size_t cols) { return QMat(rows, QVec(cols, Q(0))); }

QMat identity_matrix(std::size_t n) {
  QMat m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

QMat to_qmat(const IMat& m) {
  QMat r;
  for (const auto& row : m) {
    QVec qr;
    for (long x : row) qr.emplace_back(x);
    r.push_back(std::move(qr));
  }
  return r;
}

QMat mat_mul(const QMat& a, const QMat& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  QMat r = zero_matrix(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

QVec mat_vec(const QMat& a, const QVec& v) {
  QVec r(a.size(), Q(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) r[i] += a[i][j] * v[j];
  return r;
}

QMat transpose(const QMat& a) {
  if (a.empty()) return {};
  QMat r = zero_matrix(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) r[j][i] = a[i][j];
  return r;
}

QMat mat_add(const QMat& a, const QMat& b) {
  QMat r = a;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r[i].size(); ++j) r[i][j] += b[i][j];
  return r;
}

QMat mat_scale(const QMat& a, const Q& c) {
  QMat r = a;
  for (auto& row : r)
    for (auto& x : row) x *= c;
  return r;
}

bool is_zero(const QVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

std::vector<std::size_t> rref(QMat& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  std::size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Q inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Q f = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (m[r][j] != 0) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(QMat m) { return rref(m).size(); }

std::vector<QVec> nullspace(const QMat& a, std::size_t cols) {
  QMat m = a;
  auto piv = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<QVec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVec v(cols, Q(0));
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVec> solve(const QMat& a, const QVec& b) {
  std::size_t cols = a.empty() ? 0 : a[0].size();
  QMat aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == cols) return std::nullopt;
  QVec x(cols, Q(0));
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug[i][cols];
  return x;
}

std::optional<QMat> inverse(const QMat& a) {
  std::size_t n = a.size();
  QMat aug = a;
  for (std::size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n, Q(0));
    aug[i][n + i] = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  QMat inv = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

std::vector<QVec> span_basis(const std::vector<QVec>& vectors, std::size_t dim) {
  QMat m;
  for (const auto& v : vectors)
    if (!is_zero(v)) m.push_back(v);
  if (m.empty()) return {};
  auto piv = rref(m);
  m.resize(piv.size());
  (void)dim;
  return m;
}

bool in_span(const std::vector<QVec>& vectors, const QVec& v) {
  if (is_zero(v)) return true;
  if (vectors.empty()) return false;
  // v ∈ span iff rank does not grow.
  QMat m(vectors.begin(), vectors.end());
  std::size_t r0 = rank(m);
  m.push_back(v);
  return rank(m) == r0;
}

std::vector<QVec> span_intersection(const std::vector<QVec>& a, const std::vector<QVec>& b,
                                    std::size_t dim) {
  auto ba = span_basis(a, dim), bb = span_basis(b, dim);
  if (ba.empty() || bb.empty()) return {};
  // Solve Σ x_i a_i − Σ y_j b_j = 0.
  std::size_t na = ba.size(), nb = bb.size();
  QMat m = zero_matrix(dim, na + nb);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t i = 0; i < na; ++i) m[r][i] = ba[i][r];
    for (std::size_t j = 0; j < nb; ++j) m[r][na + j] = -bb[j][r];
  }
  std::vector<QVec> out;
  for (const auto& sol : nullspace(m, na + nb)) {
    QVec v(dim, Q(0));
    for (std::size_t i = 0; i < na; ++i)
      if (sol[i] != 0)
        for (std::size_t r = 0; r < dim; ++r) v[r] += sol[i] * ba[i][r];
    out.push_back(std::move(v));
  }
  return span_basis(out, dim);
}

std::vector<QVec> kernel_on(const QMat& a, const std::vector<QVec>& basis, std::size_t dim) {
  if (basis.empty()) return {};
  // Columns A·b_k; kernel coefficients give combinations of the basis.
  std::size_t k = basis.size();
  std::vector<QVec> images;
  for (const auto& b : basis) images.push_back(mat_vec(a, b));
  std::size_t rows = a.size();
  QMat m = zero_matrix(rows, k);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < k; ++c) m[r][c] = images[c][r];
  std::vector<QVec> out;
  for (const auto& sol : nullspace(m, k)) {
    QVec v(dim, Q(0));
    for (std::size_t c = 0; c < k; ++c)
      if (sol[c] != 0)
        for (std::size_t r = 0; r < dim; ++r) v[r] += sol[c] * basis[c][r];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace kmh
