#ifndef FGM_AMEN_HPP
#define FGM_AMEN_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "fgm/fgball.hpp"
#include "fgm/group.hpp"
#include "fgm/vn.hpp"

namespace fgm {

// Thrown when an exact computation would need elements outside the
// enumerated region. Escapes are errors, never silent truncations.
struct EscapeError : std::domain_error {
  using std::domain_error::domain_error;
};

// Where set and density arithmetic happens: a finite group (closed under
// every operation) or an enumerated ball carrying its family's group law.
// Elements are indices into the group table or the ball's element list. The
// carrier borrows the group or ball, which must outlive it.
class Carrier {
 public:
  explicit Carrier(const FiniteGroup& g);
  explicit Carrier(const FgBall& ball);

  int size() const;
  int identity() const;
  int inv(int a) const;
  int mult(int a, int b) const;      // throws EscapeError when leaving a ball
  int try_mult(int a, int b) const;  // -1 instead of throwing
  int conjugate(int s, int a) const;  // s^-1 a s, with the same escape rule

  const FiniteGroup* group() const { return group_; }

 private:
  const FiniteGroup* group_ = nullptr;
  const FgBall* ball_ = nullptr;
};

// A finitely supported density: weights >= 0 on strictly increasing carrier
// indices; `normalized` records that the weights sum to 1 within 1e-12.
struct DensityFn {
  std::vector<int> support;
  std::vector<double> weights;
  bool normalized = false;
};

// Validates support ordering, range, and non-negativity.
DensityFn make_density(const Carrier& c, std::vector<int> support,
                       std::vector<double> weights);
DensityFn uniform_density(const Carrier& c, std::vector<int> support);

double density_l1_norm(const DensityFn& f);
double density_l1_distance(const DensityFn& a, const DensityFn& b);

// (inner_s f)(t) = f(s^-1 t s); support conjugates must stay in the carrier.
DensityFn conjugate_density(const Carrier& c, const DensityFn& f, int s);

// |V delta s^-1 V s| / |V| over the counting measure.
double inner_folner_ratio(const Carrier& c, const std::vector<int>& v, int s);

// ||f - inner_s f||_1 for normalized f; equals inner_folner_ratio of the
// uniform density on V by the indicator formula |1_A - 1_B| = 1_{A delta B}.
double conjugation_defect(const Carrier& c, const DensityFn& f, int s);

// g = f * f-check, g(s) = sum_r f(s r) f(r); g(e) = ||f||_2^2, and for
// normalized f the output is normalized. On a finite group the result is a
// positive definite symbol. Requires every product a b^-1 of support points
// to stay in the carrier (ball radius at least twice the support radius).
DensityFn pd_smoothing(const Carrier& c, const DensityFn& f);

// The threshold of the layer-cake argument: given normalized f and
// perturbations gs with sum_k ||f - g_k||_1 < eps (checked), returns the
// smallest representative t > 0 (midpoint of a gap in the common value set)
// with sum_k |{f > t} delta {g_k > t}| < eps * |{f > t}|. The result is
// re-verified internally by a second, independent set computation.
double layer_cake_select(const DensityFn& f, const std::vector<DensityFn>& gs,
                         double eps);

// |V|^3 versus c^3 * sum_{s in V} |V cap sV|^2, in exact integer arithmetic
// (products leaving an enumerated ball cannot lie in V and count as misses).
struct DoublingReport {
  unsigned long long size = 0;
  unsigned long long lhs = 0;      // |V|^3
  unsigned long long rhs_sum = 0;  // sum_s |V cap sV|^2
  double rhs = 0.0;                // c^3 * rhs_sum
  bool pass = false;               // lhs <= rhs
};

DoublingReport doubling_report(const Carrier& c, const std::vector<int>& v,
                               double doubling_c);
std::vector<DoublingReport> doubling_inequality_check(
    const Carrier& c, const std::vector<std::vector<int>>& balls,
    double doubling_c);

// Densities on a finite group as symbols (zero off the support).
GroupSymbol density_to_symbol(const FiniteGroup& g, const DensityFn& f);

}  // namespace fgm

#endif  // FGM_AMEN_HPP
