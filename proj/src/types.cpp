#include "npie/types.hpp"

namespace npie {

std::string to_string(Norm p) {
  switch (p) {
    case Norm::L1: return "1";
    case Norm::L2: return "2";
    case Norm::Inf: return "inf";
  }
  return "?";
}

std::string to_string(Formulation f) { return f == Formulation::Sigma ? "1" : "2"; }

Norm parse_norm(std::string_view text) {
  if (text == "1") return Norm::L1;
  if (text == "2") return Norm::L2;
  if (text == "inf" || text == "Inf" || text == "INF") return Norm::Inf;
  throw Error("unknown norm exponent '" + std::string(text) + "' (expected 1, 2 or inf)");
}

Formulation parse_formulation(std::string_view text) {
  if (text == "1" || text == "sigma") return Formulation::Sigma;
  if (text == "2" || text == "u") return Formulation::U;
  throw Error("unknown formulation '" + std::string(text) + "' (expected 1 or 2)");
}

}  // namespace npie
