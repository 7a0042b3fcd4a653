#pragma once

// Exact linear algebra over a field descriptor (RationalField or PrimeField).
// Vectors are sparse and sorted by index; zero entries are never stored.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "formalitykit/errors.hpp"
#include "formalitykit/field.hpp"

namespace fkit {

template <class T>
using SparseVec = std::vector<std::pair<std::size_t, T>>;

template <class F>
using Vec = SparseVec<typename F::value_type>;

/// Sorts by index, merges duplicates and drops zeros.
template <class F>
Vec<F> normalize(const F& field, Vec<F> v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Vec<F> out;
  out.reserve(v.size());
  for (auto& [idx, val] : v) {
    if (!out.empty() && out.back().first == idx) {
      out.back().second = field.add(out.back().second, val);
    } else {
      out.emplace_back(idx, std::move(val));
    }
  }
  std::erase_if(out, [&](const auto& e) { return field.is_zero(e.second); });
  return out;
}

// a - c * b
template <class F>
Vec<F> sub_scaled(const F& field, const Vec<F>& a, const typename F::value_type& c, const Vec<F>& b) {
  Vec<F> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, field.neg(field.mul(c, b[j].second)));
      ++j;
    } else {
      auto v = a[i].second;
      field.sub_mul(v, c, b[j].second);
      if (!field.is_zero(v)) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

template <class F>
Vec<F> scaled(const F& field, const Vec<F>& v, const typename F::value_type& c) {
  Vec<F> out;
  if (field.is_zero(c)) return out;
  out.reserve(v.size());
  for (const auto& [idx, val] : v) out.emplace_back(idx, field.mul(val, c));
  return out;
}

template <class F>
Vec<F> unit_vector(const F& field, std::size_t idx) {
  return Vec<F>{{idx, field.one()}};
}

/// Incrementally built row-echelon basis of a subspace of F^ambient.
/// Each stored row has leading coefficient 1 at a distinct pivot column.
template <class F>
class Subspace {
 public:
  Subspace(F field, std::size_t ambient) : field_(std::move(field)), ambient_(ambient), pivot_row_(ambient, npos) {}

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vec<F>>& rows() const { return rows_; }
  const F& field() const { return field_; }

  /// Reduces v against the basis; the result is zero iff v lies in the span.
  Vec<F> reduce(Vec<F> v) const {
    while (!v.empty()) {
      std::size_t lead = v.front().first;
      std::size_t r = pivot_row_[lead];
      if (r == npos) return v;
      auto c = v.front().second;
      v = sub_scaled(field_, v, c, rows_[r]);
    }
    return v;
  }

  bool contains(const Vec<F>& v) const { return reduce(v).empty(); }

  /// Returns true when v enlarged the span.
  bool insert(const Vec<F>& v) {
    check_range(v);
    Vec<F> r = reduce(v);
    if (r.empty()) return false;
    auto inv = field_.inv(r.front().second);
    r = scaled(field_, r, inv);
    pivot_row_[r.front().first] = rows_.size();
    rows_.push_back(std::move(r));
    return true;
  }

  bool full() const { return rows_.size() == ambient_; }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  void check_range(const Vec<F>& v) const {
    if (!v.empty() && v.back().first >= ambient_) {
      throw input_error("vector index " + std::to_string(v.back().first) + " outside ambient dimension " +
                        std::to_string(ambient_));
    }
  }

  F field_;
  std::size_t ambient_;
  std::vector<std::size_t> pivot_row_;
  std::vector<Vec<F>> rows_;
};

template <class F>
Subspace<F> span_of(const F& field, std::size_t ambient, std::span<const Vec<F>> vectors) {
  Subspace<F> s(field, ambient);
  for (const auto& v : vectors) {
    if (s.full()) break;
    s.insert(v);
  }
  return s;
}

/// A rows x cols matrix stored as sparse rows.
template <class F>
class ExactMatrix {
 public:
  ExactMatrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), cols_(cols), rows_(rows) {}

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const F& field() const { return field_; }
  const Vec<F>& row(std::size_t i) const { return rows_[i]; }

  void set_row(std::size_t i, Vec<F> v) { rows_[i] = normalize(field_, std::move(v)); }

  void add_entry(std::size_t i, std::size_t j, const typename F::value_type& value) {
    pending_.emplace_back(i, j, value);
  }

  /// Folds entries collected by add_entry into the rows.
  void finalize() {
    if (pending_.empty()) return;
    for (auto& [i, j, v] : pending_) rows_[i].emplace_back(j, std::move(v));
    pending_.clear();
    for (auto& r : rows_) r = normalize(field_, std::move(r));
  }

  typename F::value_type at(std::size_t i, std::size_t j) const {
    for (const auto& [idx, v] : rows_[i]) {
      if (idx == j) return v;
    }
    return field_.zero();
  }

  ExactMatrix transpose() const {
    ExactMatrix t(field_, cols_, rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      for (const auto& [j, v] : rows_[i]) t.rows_[j].emplace_back(i, v);
    }
    return t;
  }

  Vec<F> apply(const Vec<F>& x) const {
    Vec<F> out;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      auto acc = field_.zero();
      std::size_t a = 0, b = 0;
      const auto& r = rows_[i];
      while (a < r.size() && b < x.size()) {
        if (r[a].first < x[b].first) {
          ++a;
        } else if (x[b].first < r[a].first) {
          ++b;
        } else {
          acc = field_.add(acc, field_.mul(r[a].second, x[b].second));
          ++a;
          ++b;
        }
      }
      if (!field_.is_zero(acc)) out.emplace_back(i, acc);
    }
    return out;
  }

  /// Product this * other.
  ExactMatrix multiply(const ExactMatrix& other) const {
    if (cols_ != other.rows()) throw input_error("matrix dimension mismatch in product");
    ExactMatrix out(field_, rows(), other.cols());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Vec<F> acc;
      for (const auto& [k, v] : rows_[i]) acc = sub_scaled(field_, acc, field_.neg(v), other.rows_[k]);
      out.rows_[i] = std::move(acc);
    }
    return out;
  }

  bool is_zero() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const auto& r) { return r.empty(); });
  }

 private:
  F field_;
  std::size_t cols_;
  std::vector<Vec<F>> rows_;
  std::vector<std::tuple<std::size_t, std::size_t, typename F::value_type>> pending_;
};

template <class F>
std::size_t rank(const ExactMatrix<F>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  // Echelonize along the shorter side.
  if (m.rows() > m.cols()) return rank(m.transpose());
  Subspace<F> s(m.field(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s.insert(m.row(i));
    if (s.full()) break;
  }
  return s.dim();
}

/// Basis of {x : M x = 0}, computed by dense reduced row echelon form.
template <class F>
std::vector<Vec<F>> kernel_basis(const ExactMatrix<F>& m) {
  const F& field = m.field();
  const std::size_t n = m.cols();
  std::vector<std::vector<typename F::value_type>> a;
  a.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m.row(i).empty()) continue;
    std::vector<typename F::value_type> dense(n, field.zero());
    for (const auto& [j, v] : m.row(i)) dense[j] = v;
    a.push_back(std::move(dense));
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && field.is_zero(a[piv][c])) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    auto inv = field.inv(a[r][c]);
    for (std::size_t j = c; j < n; ++j) a[r][j] = field.mul(a[r][j], inv);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || field.is_zero(a[i][c])) continue;
      auto f = a[i][c];
      for (std::size_t j = c; j < n; ++j) field.sub_mul(a[i][j], f, a[r][j]);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<Vec<F>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec<F> v;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
      if (!field.is_zero(a[i][free])) v.emplace_back(pivot_cols[i], field.neg(a[i][free]));
    }
    v.emplace_back(free, field.one());
    basis.push_back(normalize(field, std::move(v)));
  }
  return basis;
}

namespace detail {
template <class F>
void check_ambient(std::span<const Vec<F>> vs, std::size_t ambient) {
  for (const auto& v : vs) {
    if (!v.empty() && v.back().first >= ambient) {
      throw input_error("ambient-dimension mismatch: vector has index " + std::to_string(v.back().first) +
                        " but ambient dimension is " + std::to_string(ambient));
    }
  }
}
}  // namespace detail

template <class F>
Subspace<F> subspace_sum(const F& field, std::size_t ambient, std::span<const Vec<F>> u, std::span<const Vec<F>> w) {
  detail::check_ambient<F>(u, ambient);
  detail::check_ambient<F>(w, ambient);
  Subspace<F> s(field, ambient);
  for (const auto& v : u) s.insert(v);
  for (const auto& v : w) s.insert(v);
  return s;
}

/// Basis of span(U) ∩ span(W) by the Zassenhaus construction: rows (u|u) and (w|0) in
/// dimension 2n; echelon rows whose left half vanishes carry the intersection in the right half.
template <class F>
std::vector<Vec<F>> subspace_meet(const F& field, std::size_t ambient, std::span<const Vec<F>> u,
                                  std::span<const Vec<F>> w) {
  detail::check_ambient<F>(u, ambient);
  detail::check_ambient<F>(w, ambient);
  Subspace<F> s(field, 2 * ambient);
  for (const auto& v : u) {
    Vec<F> row = v;
    for (const auto& [i, x] : v) row.emplace_back(i + ambient, x);
    s.insert(row);
  }
  for (const auto& v : w) s.insert(v);
  std::vector<Vec<F>> meet;
  for (const auto& row : s.rows()) {
    if (row.front().first < ambient) continue;
    Vec<F> right;
    right.reserve(row.size());
    for (const auto& [i, x] : row) right.emplace_back(i - ambient, x);
    meet.push_back(std::move(right));
  }
  return meet;
}

/// dim span(U) - dim span(W); span(W) must lie inside span(U).
template <class F>
std::size_t quotient_dim(const F& field, std::size_t ambient, std::span<const Vec<F>> u, std::span<const Vec<F>> w) {
  detail::check_ambient<F>(u, ambient);
  detail::check_ambient<F>(w, ambient);
  Subspace<F> su = span_of<F>(field, ambient, u);
  Subspace<F> sw(field, ambient);
  for (const auto& v : w) {
    if (!su.contains(v)) throw input_error("quotient_dim: span(W) is not contained in span(U)");
    sw.insert(v);
  }
  return su.dim() - sw.dim();
}

}  // namespace fkit
