#include "qab/numeric.hpp"

#include <cmath>

namespace qab {

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits10_(HighReal::default_precision()) {
  if (bits < 64) throw QabError("high precision needs at least 64 mantissa bits");
  const auto digits10 = static_cast<unsigned>(std::ceil(bits * 0.30102999566398120));
  HighReal::default_precision(digits10);
}

PrecisionScope::~PrecisionScope() { HighReal::default_precision(saved_digits10_); }

}  // namespace qab
