#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <vector>

#include "coexpand/analysis.hpp"
#include "coexpand/error.hpp"
#include "detail.hpp"

namespace coexpand {

std::string_view verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::Certified: return "Certified";
    case Verdict::Falsified: return "Falsified";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

constexpr std::size_t kReachBudget = 1'000'000;

struct Piece {
  Interval span;
  bool exact_left = false;  // left end is an exact seam shared with the previous piece
};

struct Job {
  Box2 box;
  int i;  // piece holding x
  int j;  // piece holding y, j <= i
};

class Certifier {
 public:
  Certifier(const FunctionExpr& f, const Interval& domain, const CertifyParams& params, Certificate& cert)
      : f_(f), domain_(domain), params_(params), cert_(cert) {}

  void run() {
    CritReport crit = critical_points(f_, domain_, params_.root_depth);
    if (crit.status == CritReport::Status::Incomplete) throw PreconditionUnmet("certify: " + crit.reason);
    cert_.components = crit.components;
    std::vector<Seam> seams = find_seams(f_, domain_, params_.root_depth);
    for (const Seam& s : seams) {
      cert_.seams.push_back(s.x);
      if (!s.exact) cert_.notes.push_back("seam near " + std::to_string(s.x) + " is not exactly representable");
    }
    for (const Interval& c : crit.components) {
      component(c, seams);
      if (falsified_ || out_of_budget_) break;
    }
    finish();
  }

 private:
  void component(const Interval& c, const std::vector<Seam>& seams) {
    std::vector<Piece> pieces;
    double start = c.lo();
    bool exact = false;
    for (const Seam& s : seams) {
      if (s.x <= c.lo() || s.x >= c.hi()) continue;
      pieces.push_back({Interval(start, s.x), exact});
      start = s.x;
      exact = s.exact;
    }
    pieces.push_back({Interval(start, c.hi()), exact});
    leaf_ = c.width() * std::ldexp(1.0, -params_.max_depth);
    component_ = c;
    reach_.assign(pieces.size(), std::nullopt);

    for (const Piece& p : pieces) {
      diagonal(p.span);
      if (stop()) return;
    }
    for (std::size_t k = 1; k < pieces.size(); ++k) {
      if (glue_ok()) {
        double s = pieces[k].span.lo();
        discharged({Interval(s, s + params_.diag_band), Interval(s - params_.diag_band, s)}, Discharge::GlueLemma);
      }
    }

    std::vector<Job> stack;
    for (int i = static_cast<int>(pieces.size()) - 1; i >= 0; --i) {
      for (int j = i; j >= 0; --j) stack.push_back({{pieces[i].span, pieces[j].span}, i, j});
    }
    std::reverse(stack.begin(), stack.end());
    while (!stack.empty()) {
      Job job = stack.back();
      stack.pop_back();
      if (stop()) {
        if (out_of_budget_) cert_.frontier.push_back(job.box);
        continue;
      }
      ++cert_.boxes_processed;
      const Interval& X = job.box.x;
      const Interval& Y = job.box.y;
      if (X.hi() <= Y.lo()) continue;
      bool band_only = X.hi() - Y.lo() <= params_.diag_band;
      if (band_only && (job.i == job.j || (job.i == job.j + 1 && glue_ok()))) continue;
      bool disjoint = X.lo() > Y.hi();
      if (disjoint) {
        if (auto how = discharge(job, pieces)) {
          discharged(job.box, *how);
          continue;
        }
        if (try_witness(X.mid(), Y.mid())) return;
      }
      // Boxes touching the diagonal keep splitting until they fit in the band.
      double leaf = disjoint ? leaf_ : std::min(leaf_, params_.diag_band / 4);
      if (std::max(X.width(), Y.width()) <= leaf) {
        cert_.frontier.push_back(job.box);
        continue;
      }
      auto [a, b] = split(job.box);
      stack.push_back({b, job.i, job.j});
      stack.push_back({a, job.i, job.j});
    }
  }

  std::optional<Discharge> discharge(const Job& job, const std::vector<Piece>& pieces) {
    const Interval& X = job.box.x;
    const Interval& Y = job.box.y;
    // Close to the diagonal the quotient straddles 1 and only the Taylor form can pass.
    bool near = job.i == job.j && X.lo() - Y.hi() < std::max(X.width(), Y.width());
    if (near && detail::taylor_numerator(f_, X, Y).hi() <= 0.0) return Discharge::TaylorChi;
    if (detail::chi_direct(f_, X, Y, true).hi() <= 1.0) return Discharge::DirectChi;
    if (job.i == job.j && !near) {
      if (detail::taylor_numerator(f_, X, Y).hi() <= 0.0) return Discharge::TaylorChi;
    } else if (job.i == job.j + 1 && pieces[job.i].exact_left) {
      double s = pieces[job.i].span.lo();
      if (detail::seam_numerator(f_, X, Y, s).hi() <= 0.0) return Discharge::SeamTaylor;
    }
    for (int k = job.j + 1; k <= job.i; ++k) {
      const detail::SeamReach& r = reach(k, pieces);
      if (X.hi() <= r.right && Y.lo() >= r.left) return Discharge::CrossSeam;
    }
    if (seam_edge(job, pieces)) return Discharge::SeamEdge;
    return std::nullopt;
  }

  // A box with one side on an exact seam s: χ(·, s) ≤ 1 on that edge and
  // log χ decreasing away from it.
  bool seam_edge(const Job& job, const std::vector<Piece>& pieces) {
    const Interval& X = job.box.x;
    const Interval& Y = job.box.y;
    auto edge_ok = [&](const Interval& ex, const Interval& ey, bool same_piece) {
      if (detail::chi_direct(f_, ex, ey, true).hi() <= 1.0) return true;
      return same_piece && detail::taylor_numerator(f_, ex, ey).hi() <= 0.0;
    };
    std::size_t j = static_cast<std::size_t>(job.j);
    if (j + 1 < pieces.size() && pieces[j + 1].exact_left && Y.hi() == pieces[j].span.hi()) {
      Interval s(Y.hi());
      if (detail::log_chi_partial(f_, X, Y, false).lo() >= 0.0 && edge_ok(X, s, job.i == job.j + 1)) return true;
    }
    if (pieces[job.i].exact_left && X.lo() == pieces[job.i].span.lo()) {
      Interval s(X.lo());
      if (detail::log_chi_partial(f_, X, Y, true).hi() <= 0.0 && edge_ok(s, Y, job.i == job.j + 1)) return true;
    }
    return false;
  }

  // Diagonal band of one piece: f' f''' - 3/2 f''^2 <= 0 has the sign of S_f.
  void diagonal(const Interval& piece) {
    std::vector<Interval> stack{piece};
    while (!stack.empty()) {
      Interval J = stack.back();
      stack.pop_back();
      if (stop()) {
        if (out_of_budget_) cert_.frontier.push_back({J, J});
        continue;
      }
      ++cert_.boxes_processed;
      bool ok = false;
      try {
        Jet3<Interval> j = jet_eval(f_, J);
        ok = (j.d1 * j.d3 - Interval(1.5) * sqr(j.d2)).hi() <= 0.0;
      } catch (const DomainViolation&) {
      }
      if (ok) {
        discharged({J, J}, Discharge::Schwarzian);
        continue;
      }
      if (J.width() <= leaf_) {
        if (!diagonal_witness(J)) cert_.frontier.push_back({J, J});
        continue;
      }
      double m = J.mid();
      stack.emplace_back(m, J.hi());
      stack.emplace_back(J.lo(), m);
    }
  }

  // Positive Schwarzian at the cell midpoint: look for a close coexpanding pair.
  bool diagonal_witness(const Interval& J) {
    double m = J.mid();
    for (double h = params_.diag_band; h > leaf_ * 1e-3; h /= 2) {
      double x = m + h / 2, y = m - h / 2;
      if (x > piece_hi(m) || y < piece_lo(m)) continue;
      if (try_witness(x, y)) return true;
    }
    return false;
  }

  // The sub-interval of the domain with no seam or critical point around m.
  double piece_lo(double m) const {
    double lo = domain_.lo();
    for (const Interval& c : cert_.components) {
      if (c.contains(m)) lo = c.lo();
    }
    for (double s : cert_.seams) {
      if (s < m) lo = std::max(lo, s);
    }
    return lo;
  }
  double piece_hi(double m) const {
    double hi = domain_.hi();
    for (const Interval& c : cert_.components) {
      if (c.contains(m)) hi = c.hi();
    }
    for (double s : cert_.seams) {
      if (s > m) hi = std::min(hi, s);
    }
    return hi;
  }

  bool try_witness(double x, double y) {
    if (!(x > y)) return false;
    try {
      if (!(chi(f_, x, y) > 1.0 + params_.point_margin)) return false;
    } catch (const Error&) {
      return false;
    }
    double lb = detail::chi_lower(f_, x, y);
    if (lb > 1.0 + params_.point_margin) {
      cert_.witness = Witness{x, y, lb};
      falsified_ = true;
      return true;
    }
    return false;
  }

  const detail::SeamReach& reach(int k, const std::vector<Piece>& pieces) {
    auto& r = reach_[static_cast<std::size_t>(k)];
    if (!r) r = detail::seam_reach(f_, pieces[k].span.lo(), component_, cert_.seams, kReachBudget);
    return *r;
  }

  bool glue_ok() {
    if (!glue_ok_) glue_ok_ = detail::glue_hypotheses_hold(f_, domain_, params_);
    return *glue_ok_;
  }

  void discharged(const Box2& b, Discharge how) {
    if (params_.record_trace) cert_.trace.push_back({b, how});
  }

  bool stop() {
    if (!out_of_budget_ && cert_.boxes_processed >= params_.budget) out_of_budget_ = true;
    return falsified_ || out_of_budget_;
  }

  void finish() {
    if (falsified_) {
      cert_.verdict = Verdict::Falsified;
      cert_.frontier.clear();
      return;
    }
    if (out_of_budget_) cert_.notes.push_back("box budget exhausted");
    if (glue_ok_ && !*glue_ok_) cert_.notes.push_back("glue hypotheses could not be re-verified");
    std::sort(cert_.frontier.begin(), cert_.frontier.end(), box_less);
    cert_.verdict = cert_.frontier.empty() && !out_of_budget_ ? Verdict::Certified : Verdict::Unknown;
  }

  const FunctionExpr& f_;
  Interval domain_;
  const CertifyParams& params_;
  Certificate& cert_;
  double leaf_ = 0.0;
  bool falsified_ = false;
  bool out_of_budget_ = false;
  std::optional<bool> glue_ok_;
  Interval component_;
  std::vector<std::optional<detail::SeamReach>> reach_;
};

}  // namespace

Certificate certify_membership(const FunctionExpr& f, const Interval& domain, const CertifyParams& params) {
  auto start = std::chrono::steady_clock::now();
  Certificate cert;
  cert.params = params;
  cert.domain = domain;
  cert.notes.push_back("analysis restricted to " + to_string(domain));
  Certifier(f, domain, params, cert).run();
  cert.wall_time = std::chrono::steady_clock::now() - start;
  return cert;
}

}  // namespace coexpand
