#include "seqsteer/steering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace seqsteer {

double fgi_lhs(const ConditionalTable& table) {
  double sum = 0.0;
  for (Bit x = 0; x < 2; ++x) {
    double best = 0.0;
    for (Bit s = 0; s < 2; ++s) {
      double worst = std::numeric_limits<double>::infinity();
      for (Bit a = 0; a < 2; ++a) {
        if (!table.conditionable(x, a)) continue;
        worst = std::min(worst, table.conditional(x, a ^ s, x, a));
      }
      if (worst == std::numeric_limits<double>::infinity()) {
        throw ComputationError("fgi_lhs: Alice has no outcome with nonzero probability");
      }
      best = std::max(best, worst);
    }
    sum += best;
  }
  return 0.5 * sum;
}

double key_rate(double delta) {
  if (!(delta >= 0.0 && delta <= kMaxViolation + kEps)) {
    throw std::invalid_argument("key_rate: violation " + std::to_string(delta) + " outside [0, 1/4]");
  }
  delta = std::min(delta, kMaxViolation);
  return std::log2((kSteeringBound + delta) / (kSteeringBound - delta));
}

double delta_for_rate(double rate) {
  const double p = std::exp2(rate);
  return kSteeringBound * (p - 1.0) / (p + 1.0);
}

SteeringReport make_report(double lhs) {
  SteeringReport r;
  r.lhs = lhs;
  r.delta = std::clamp(lhs - kSteeringBound, 0.0, kMaxViolation);
  r.violated = r.delta > 0.0;
  r.key_rate = r.violated ? key_rate(r.delta) : 0.0;
  return r;
}

SteeringReport make_report(const ConditionalTable& table) { return make_report(fgi_lhs(table)); }

SteeringReport report(const ChainSpec& spec, Party party) {
  spec.validate();
  return make_report(conditional_table(spec, party));
}

}  // namespace seqsteer
