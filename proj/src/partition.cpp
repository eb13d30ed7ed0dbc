#include "secmom/partition.hpp"

#include <numeric>

#include "secmom/error.hpp"

namespace secmom {

Partition::Partition(std::vector<unsigned> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] == 0) throw DomainError("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw DomainError("partition parts must be weakly decreasing");
  }
}

Partition::Partition(std::initializer_list<unsigned> parts)
    : Partition(std::vector<unsigned>(parts)) {}

unsigned Partition::size() const {
  return std::accumulate(parts_.begin(), parts_.end(), 0u);
}

Partition Partition::conjugate() const {
  std::vector<unsigned> out(largest(), 0);
  for (unsigned p : parts_)
    for (unsigned j = 0; j < p; ++j) ++out[j];
  return Partition(std::move(out));
}

bool Partition::is_even() const {
  for (unsigned p : parts_)
    if (p % 2 != 0) return false;
  return true;
}

bool Partition::has_even_conjugate() const {
  std::size_t i = 0;
  while (i < parts_.size()) {
    std::size_t j = i;
    while (j < parts_.size() && parts_[j] == parts_[i]) ++j;
    if ((j - i) % 2 != 0) return false;
    i = j;
  }
  return true;
}

std::string Partition::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts_[i]);
  }
  return s + ")";
}

}  // namespace secmom
