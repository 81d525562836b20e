#pragma once

namespace nmskit {

/// Simplified neutrosophic number: truth, indeterminacy and falsity degrees,
/// each in [0, 1]. Construction validates the components.
class Snn {
 public:
  Snn(double g, double b, double y);

  double g() const noexcept { return g_; }
  double b() const noexcept { return b_; }
  double y() const noexcept { return y_; }

  friend bool operator==(const Snn&, const Snn&) = default;

 private:
  double g_, b_, y_;
};

// Componentwise probabilistic sum.
Snn snn_add(const Snn& u, const Snn& v);
Snn snn_multiply(const Snn& u, const Snn& v);
/// (1-(1-g)^a, 1-(1-b)^a, 1-(1-y)^a); alpha must be positive.
Snn snn_scale(double alpha, const Snn& u);
/// (g^a, b^a, y^a); alpha must be positive.
Snn snn_power(double alpha, const Snn& u);
/// u is comprised in v: g_u <= g_v, b_u >= b_v, y_u >= y_v.
bool snn_included(const Snn& u, const Snn& v);

}  // namespace nmskit
