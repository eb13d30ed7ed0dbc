#pragma once

#include <compare>
#include <initializer_list>
#include <string>
#include <vector>

namespace secmom {

/// Weakly decreasing list of positive parts. The empty partition is valid.
class Partition {
 public:
  Partition() = default;
  /// Throws DomainError if parts are not positive and weakly decreasing.
  explicit Partition(std::vector<unsigned> parts);
  Partition(std::initializer_list<unsigned> parts);

  const std::vector<unsigned>& parts() const { return parts_; }
  std::size_t length() const { return parts_.size(); }
  unsigned size() const;  ///< |lambda|
  unsigned largest() const { return parts_.empty() ? 0 : parts_.front(); }
  unsigned operator[](std::size_t i) const { return parts_[i]; }

  Partition conjugate() const;

  /// Every part even.
  bool is_even() const;
  /// Conjugate is even, i.e. every part occurs an even number of times.
  bool has_even_conjugate() const;

  std::string to_string() const;

  auto operator<=>(const Partition&) const = default;

 private:
  std::vector<unsigned> parts_;
};

}  // namespace secmom
