#pragma once

// Branch expansion: given F(x,y)=0 through (x0,y0) with F_y(x0,y0) != 0,
// produce the jet of the unique analytic branch y(z), z = x - x0, to a
// requested order.  Newton iteration with precision doubling: an iterate
// correct through z^n is corrected through z^{2n+1} in one step, so the
// total cost is dominated by the final full-order pass.

#include "wahllab/jet.hpp"
#include "wahllab/polynomial.hpp"

namespace wahllab {

inline JetQ newton_branch(const Poly2& F, const Rat& x0, const Rat& y0,
                          int order) {
  if (order < 0) throw OutOfRange("negative expansion order");
  if (!is_zero(F.eval(x0, y0)))
    throw NotOnCurve("point (" + rat_str(x0) + ", " + rat_str(y0) +
                     ") does not satisfy the curve equation");
  Poly2 Fy = F.partial_y();
  if (is_zero(Fy.eval(x0, y0))) {
    if (is_zero(F.partial_x().eval(x0, y0)))
      throw SingularPoint("curve is singular at (" + rat_str(x0) + ", " +
                          rat_str(y0) + ")");
    throw BranchPointNotSupported(
        "vertical tangent at (" + rat_str(x0) + ", " + rat_str(y0) +
        "): the x-projection ramifies here; expand at a different point");
  }

  JetQ y = JetQ::constant(y0, 0);
  while (y.order() < order) {
    int next = std::min(2 * y.order() + 1, order);
    JetQ X = next >= 1 ? JetQ::variable(x0, next) : JetQ::constant(x0, 0);
    JetQ Y = jet_extend_zero(y, next);
    JetQ num = F.eval_at(X, Y);
    JetQ den = Fy.eval_at(X, Y);
    y = Y - jet_mul(num, jet_reciprocal(den));
  }

  // The residual must vanish identically through the full order.
  JetQ X = order >= 1 ? JetQ::variable(x0, order) : JetQ::constant(x0, 0);
  internal_check(F.eval_at(X, y).is_zero(), "branch residual nonzero");
  return y;
}

}  // namespace wahllab
