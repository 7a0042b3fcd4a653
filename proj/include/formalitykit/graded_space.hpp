#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "formalitykit/errors.hpp"

namespace fkit {

/// Finite-support graded vector space with a labeled basis in each degree.
class GradedVectorSpace {
 public:
  GradedVectorSpace() = default;

  void add(int degree, std::string label) {
    auto& labels = components_[degree];
    for (const auto& l : labels) {
      if (l == label) throw input_error("duplicate basis label '" + label + "' in degree " + std::to_string(degree));
    }
    labels.push_back(std::move(label));
  }

  /// Adds `count` anonymous basis vectors in `degree`.
  void add_dimension(int degree, std::size_t count, const std::string& prefix = "v") {
    for (std::size_t i = 0; i < count; ++i) {
      add(degree, prefix + std::to_string(degree) + "_" + std::to_string(dim(degree)));
    }
  }

  std::size_t dim(int degree) const {
    auto it = components_.find(degree);
    return it == components_.end() ? 0 : it->second.size();
  }

  std::size_t total_dim() const {
    std::size_t n = 0;
    for (const auto& [d, labels] : components_) n += labels.size();
    return n;
  }

  bool is_zero() const { return components_.empty(); }

  const std::map<int, std::vector<std::string>>& components() const { return components_; }

  std::map<int, std::size_t> dims() const {
    std::map<int, std::size_t> out;
    for (const auto& [d, labels] : components_) out[d] = labels.size();
    return out;
  }

  /// M<i> with M<i>^q = M^{q+i}: every element moves down by i.
  GradedVectorSpace shifted(int i) const {
    GradedVectorSpace out;
    for (const auto& [d, labels] : components_) out.components_[d - i] = labels;
    return out;
  }

  bool operator==(const GradedVectorSpace& other) const { return dims() == other.dims(); }

 private:
  std::map<int, std::vector<std::string>> components_;
};

inline int maxdeg(const GradedVectorSpace& v) {
  if (v.is_zero()) throw input_error("maxdeg of the zero space is undefined");
  return v.components().rbegin()->first;
}

inline int mindeg(const GradedVectorSpace& v) {
  if (v.is_zero()) throw input_error("mindeg of the zero space is undefined");
  return v.components().begin()->first;
}

}  // namespace fkit
