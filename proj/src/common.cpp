#include "ginibre/common.hpp"

#include <algorithm>
#include <cctype>

namespace ginibre {

EnsembleKind parse_ensemble(const std::string& s) {
  std::string t = s;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "ginoe" || t == "1") return EnsembleKind::GinOE;
  if (t == "ginue" || t == "2") return EnsembleKind::GinUE;
  if (t == "ginse" || t == "4") return EnsembleKind::GinSE;
  throw DomainError("unknown ensemble '" + s + "' (expected ginoe, ginue or ginse)");
}

}  // namespace ginibre
