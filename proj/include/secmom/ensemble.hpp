#pragma once

#include <string>
#include <string_view>

namespace secmom {

enum class Ensemble { symplectic, orthogonal };

/// "sym" / "orth".
std::string_view ensemble_name(Ensemble e);
/// Accepts "sym", "symplectic", "orth", "orthogonal"; throws DomainError.
Ensemble parse_ensemble(std::string_view text);

/// Largest admissible first part of a shape: 2N (Sp(2N)) or 2N+1 (O(2N+1)).
inline unsigned max_part(Ensemble e, unsigned N) {
  return e == Ensemble::symplectic ? 2 * N : 2 * N + 1;
}

/// Top of the moment range: 2Nk or (2N+1)k.
inline unsigned top_degree(Ensemble e, unsigned k, unsigned N) {
  return max_part(e, N) * k;
}

}  // namespace secmom
