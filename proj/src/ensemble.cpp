#include "secmom/ensemble.hpp"

#include "secmom/error.hpp"

namespace secmom {

std::string_view ensemble_name(Ensemble e) {
  return e == Ensemble::symplectic ? "sym" : "orth";
}

Ensemble parse_ensemble(std::string_view text) {
  if (text == "sym" || text == "symplectic") return Ensemble::symplectic;
  if (text == "orth" || text == "orthogonal") return Ensemble::orthogonal;
  throw DomainError("unknown ensemble '" + std::string(text) + "'");
}

}  // namespace secmom
