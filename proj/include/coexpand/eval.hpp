#pragma once

#include "coexpand/expr.hpp"
#include "coexpand/interval.hpp"
#include "coexpand/jet.hpp"

namespace coexpand {

struct EvalOptions {
  /// Branch taken by a glue node whose argument is exactly 0.  Values and
  /// first derivatives agree there; second and third derivatives are the
  /// one-sided ones of the chosen branch.
  GlueSide seam_side = GlueSide::Left;
};

/// What the evaluation learned about glue seams on its way.
struct SeamInfo {
  bool touched = false;    // some glue argument could equal 0
  bool straddled = false;  // some glue argument took both signs
};

double eval(const FunctionExpr& f, double x, const EvalOptions& options = {}, SeamInfo* seams = nullptr);

/// Enclosure of { f(x) : x ∈ X }.  Throws DomainViolation.
Interval interval_eval(const FunctionExpr& f, const Interval& x, const EvalOptions& options = {},
                       SeamInfo* seams = nullptr);

Jet3<double> jet_eval(const FunctionExpr& f, double x, const EvalOptions& options = {}, SeamInfo* seams = nullptr);

/// Componentwise enclosure of the jet over X.  Where X straddles a glue
/// seam the order-2 and order-3 components enclose both one-sided values.
Jet3<Interval> jet_eval(const FunctionExpr& f, const Interval& x, const EvalOptions& options = {},
                        SeamInfo* seams = nullptr);

}  // namespace coexpand
