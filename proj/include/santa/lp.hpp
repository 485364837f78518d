// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense two-phase primal simplex over exact rationals with Bland's rule.
//
// Sign conventions. For every solved problem the dual vector y holds the
// shadow price of each constraint, i.e. the rate of change of the optimal
// objective when that right-hand side grows. With s = +1 for maximization and
// s = -1 for minimization, a dual y is feasible iff
//
//   s * y_r >= 0 on <= rows,  s * y_r <= 0 on >= rows,  y_r free on = rows,
//   s * (c_j - sum_r y_r a_rj) <= 0 for every variable j,
//
// and its objective is  sum_r b_r y_r + sum_j (c_j - sum_r y_r a_rj) lb_j.
//
// An infeasibility certificate f (one entry per row) satisfies
//   f_r >= 0 on <= rows, f_r <= 0 on >= rows, f^T A >= 0, f^T b < f^T A lb.
// An unboundedness ray d satisfies d >= 0, A d respecting each relation with
// zero right-hand side, and s * c^T d > 0.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "santa/rational.hpp"

namespace santa::lp {

enum class Sense { kMaximize, kMinimize };
enum class Relation { kLessEqual, kGreaterEqual, kEqual };
enum class Status { kOptimal, kInfeasible, kUnbounded };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
  }
  return "?";
}

struct Constraint {
  std::vector<Rational> coefficients;
  Relation relation = Relation::kLessEqual;
  Rational rhs;
};

struct Problem {
  Sense sense = Sense::kMaximize;
  std::vector<Rational> objective;
  std::vector<Constraint> constraints;
  // Empty means every variable is bounded below by 0.
  std::vector<Rational> lower_bounds;

  std::size_t num_vars() const { return objective.size(); }

  Rational lower_bound(std::size_t j) const {
    return lower_bounds.empty() ? Rational(0) : lower_bounds[j];
  }

  std::size_t add_variable(Rational cost) {
    objective.push_back(std::move(cost));
    for (auto& c : constraints) c.coefficients.emplace_back();
    if (!lower_bounds.empty()) lower_bounds.emplace_back();
    return objective.size() - 1;
  }
};

struct Outcome {
  Status status = Status::kInfeasible;
  Rational objective_value;
  std::vector<Rational> primal;
  std::vector<Rational> dual;
  std::vector<Rational> ray;     // kUnbounded only
  std::vector<Rational> farkas;  // kInfeasible only
  std::size_t pivots = 0;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CheckReport {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};

namespace detail {

inline void validate(const Problem& p) {
  const std::size_t n = p.num_vars();
  if (!p.lower_bounds.empty() && p.lower_bounds.size() != n)
    throw DimensionError("lower_bounds has " + std::to_string(p.lower_bounds.size()) +
                         " entries for " + std::to_string(n) + " variables");
  for (std::size_t r = 0; r < p.constraints.size(); ++r)
    if (p.constraints[r].coefficients.size() != n)
      throw DimensionError("constraint " + std::to_string(r) + " has " +
                           std::to_string(p.constraints[r].coefficients.size()) +
                           " coefficients for " + std::to_string(n) + " variables");
}

inline Relation flipped(Relation r) {
  if (r == Relation::kLessEqual) return Relation::kGreaterEqual;
  if (r == Relation::kGreaterEqual) return Relation::kLessEqual;
  return r;
}

// Equality-form tableau  [A' | S | I_art] x = b'  with b' >= 0, maximizing.
class Tableau {
 public:
  explicit Tableau(const Problem& p) : m_(p.constraints.size()), n_(p.num_vars()) {
    const mpq_class zero(0);
    flip_.assign(m_, 1);
    std::vector<Relation> rel(m_);
    std::vector<mpq_class> rhs(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      const auto& c = p.constraints[r];
      mpq_class b = c.rhs.raw();
      for (std::size_t j = 0; j < n_; ++j) b -= c.coefficients[j].raw() * p.lower_bound(j).raw();
      rel[r] = c.relation;
      if (sgn(b) < 0) {
        flip_[r] = -1;
        b = -b;
        rel[r] = flipped(rel[r]);
      }
      rhs[r] = b;
    }
    std::size_t num_logical = 0;
    for (std::size_t r = 0; r < m_; ++r)
      if (rel[r] != Relation::kEqual) ++num_logical;
    std::size_t num_art = 0;
    for (std::size_t r = 0; r < m_; ++r)
      if (rel[r] != Relation::kLessEqual) ++num_art;
    first_art_ = n_ + num_logical;
    cols_ = first_art_ + num_art;

    rows_.assign(m_, std::vector<mpq_class>(cols_ + 1, zero));
    basis_.assign(m_, 0);
    initial_basic_.assign(m_, 0);
    std::size_t logical = n_;
    std::size_t art = first_art_;
    for (std::size_t r = 0; r < m_; ++r) {
      const auto& c = p.constraints[r];
      for (std::size_t j = 0; j < n_; ++j) {
        rows_[r][j] = c.coefficients[j].raw();
        if (flip_[r] < 0) rows_[r][j] = -rows_[r][j];
      }
      rows_[r][cols_] = rhs[r];
      if (rel[r] == Relation::kLessEqual) {
        rows_[r][logical] = 1;
        basis_[r] = logical++;
      } else {
        if (rel[r] == Relation::kGreaterEqual) rows_[r][logical++] = -1;
        rows_[r][art] = 1;
        basis_[r] = art++;
      }
      initial_basic_[r] = basis_[r];
    }
  }

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return cols_; }
  std::size_t structural() const { return n_; }
  std::size_t first_artificial() const { return first_art_; }
  bool is_artificial(std::size_t j) const { return j >= first_art_; }
  int flip(std::size_t r) const { return flip_[r]; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  const mpq_class& at(std::size_t r, std::size_t j) const { return rows_[r][j]; }
  const mpq_class& rhs(std::size_t r) const { return rows_[r][cols_]; }
  std::size_t pivots() const { return pivots_; }

  void pivot(std::size_t pr, std::size_t pc) {
    auto& prow = rows_[pr];
    const mpq_class piv = prow[pc];
    for (auto& v : prow)
      if (sgn(v) != 0) v /= piv;
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == pr) continue;
      auto& row = rows_[r];
      if (sgn(row[pc]) == 0) continue;
      const mpq_class f = row[pc];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (sgn(prow[j]) != 0) row[j] -= f * prow[j];
    }
    basis_[pr] = pc;
    ++pivots_;
  }

  // Runs Bland-rule primal simplex maximizing `cost` (indexed by column).
  // Columns with allowed[j] == false never enter. Returns the entering column
  // that proved unboundedness, or nullopt at optimality.
  std::optional<std::size_t> optimize(const std::vector<mpq_class>& cost,
                                      const std::vector<char>& allowed) {
    std::vector<mpq_class> rc = reduced_costs(cost);
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < cols_; ++j)
        if (allowed[j] && sgn(rc[j]) > 0) {
          enter = j;
          break;
        }
      if (!enter) return std::nullopt;
      std::optional<std::size_t> leave;
      mpq_class best_ratio;
      for (std::size_t r = 0; r < m_; ++r) {
        if (sgn(rows_[r][*enter]) <= 0) continue;
        mpq_class ratio = rhs(r) / rows_[r][*enter];
        if (!leave || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[*leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (!leave) return enter;
      const mpq_class f = rc[*enter];
      pivot(*leave, *enter);
      const auto& prow = rows_[*leave];
      for (std::size_t j = 0; j < cols_; ++j)
        if (sgn(prow[j]) != 0) rc[j] -= f * prow[j];
    }
  }

  std::vector<mpq_class> reduced_costs(const std::vector<mpq_class>& cost) const {
    std::vector<mpq_class> rc(cost.begin(), cost.end());
    for (std::size_t r = 0; r < m_; ++r) {
      const mpq_class& cb = cost[basis_[r]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j)
        if (sgn(rows_[r][j]) != 0) rc[j] -= cb * rows_[r][j];
    }
    return rc;
  }

  // u = c_B^T B^{-1}; B^{-1} sits in the columns of the initial identity basis.
  std::vector<mpq_class> duals(const std::vector<mpq_class>& cost) const {
    std::vector<mpq_class> u(m_, mpq_class(0));
    for (std::size_t r = 0; r < m_; ++r) {
      for (std::size_t i = 0; i < m_; ++i) {
        const mpq_class& cb = cost[basis_[i]];
        if (sgn(cb) != 0) u[r] += cb * rows_[i][initial_basic_[r]];
      }
    }
    return u;
  }

  std::vector<mpq_class> basic_solution() const {
    std::vector<mpq_class> x(cols_, mpq_class(0));
    for (std::size_t r = 0; r < m_; ++r) x[basis_[r]] = rhs(r);
    return x;
  }

 private:
  std::size_t m_;
  std::size_t n_;
  std::size_t first_art_ = 0;
  std::size_t cols_ = 0;
  std::vector<int> flip_;
  std::vector<std::vector<mpq_class>> rows_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> initial_basic_;
  std::size_t pivots_ = 0;
};

}  // namespace detail

// Solves p exactly. Deterministic: the same problem always yields the same
// outcome, including which optimal vertex is returned.
inline Outcome solve(const Problem& p) {
  detail::validate(p);
  const std::size_t n = p.num_vars();
  const std::size_t m = p.constraints.size();
  const int s = p.sense == Sense::kMaximize ? 1 : -1;
  detail::Tableau t(p);
  Outcome out;

  // Phase 1: maximize -(sum of artificials).
  std::vector<mpq_class> phase1(t.cols(), mpq_class(0));
  for (std::size_t j = t.first_artificial(); j < t.cols(); ++j) phase1[j] = -1;
  std::vector<char> all(t.cols(), 1);
  t.optimize(phase1, all);
  mpq_class infeasibility(0);
  for (std::size_t r = 0; r < m; ++r)
    if (t.is_artificial(t.basis()[r])) infeasibility += t.rhs(r);
  if (sgn(infeasibility) > 0) {
    const auto u = t.duals(phase1);
    out.status = Status::kInfeasible;
    out.farkas.resize(m);
    for (std::size_t r = 0; r < m; ++r) out.farkas[r] = Rational(mpq_class(t.flip(r) * u[r]));
    out.pivots = t.pivots();
    return out;
  }

  // Drive zero-level artificials out of the basis; rows where that is
  // impossible are redundant and never interact with later pivots.
  for (std::size_t r = 0; r < m; ++r) {
    if (!t.is_artificial(t.basis()[r])) continue;
    for (std::size_t j = 0; j < t.first_artificial(); ++j)
      if (sgn(t.at(r, j)) != 0) {
        t.pivot(r, j);
        break;
      }
  }

  // Phase 2.
  std::vector<mpq_class> phase2(t.cols(), mpq_class(0));
  for (std::size_t j = 0; j < n; ++j) phase2[j] = s * p.objective[j].raw();
  std::vector<char> allowed(t.cols(), 1);
  for (std::size_t j = t.first_artificial(); j < t.cols(); ++j) allowed[j] = 0;
  if (auto ray_col = t.optimize(phase2, allowed)) {
    out.status = Status::kUnbounded;
    out.ray.assign(n, Rational(0));
    if (*ray_col < n) out.ray[*ray_col] = Rational(1);
    for (std::size_t r = 0; r < m; ++r)
      if (t.basis()[r] < n) out.ray[t.basis()[r]] = Rational(mpq_class(-t.at(r, *ray_col)));
    out.pivots = t.pivots();
    return out;
  }

  const auto x = t.basic_solution();
  const auto u = t.duals(phase2);
  out.status = Status::kOptimal;
  out.primal.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.primal[j] = Rational(x[j]) + p.lower_bound(j);
    out.objective_value += p.objective[j] * out.primal[j];
  }
  out.dual.resize(m);
  for (std::size_t r = 0; r < m; ++r) out.dual[r] = Rational(mpq_class(s * t.flip(r) * u[r]));
  out.pivots = t.pivots();
  return out;
}

inline Rational row_activity(const Constraint& c, const std::vector<Rational>& x) {
  Rational a;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (!c.coefficients[j].is_zero()) a += c.coefficients[j] * x[j];
  return a;
}

inline bool satisfies(const Rational& lhs, Relation rel, const Rational& rhs) {
  switch (rel) {
    case Relation::kLessEqual: return lhs <= rhs;
    case Relation::kGreaterEqual: return lhs >= rhs;
    case Relation::kEqual: return lhs == rhs;
  }
  return false;
}

// Checks primal feasibility, dual feasibility and equal objectives, exactly.
inline CheckReport check_solution(const Problem& p, const std::vector<Rational>& primal,
                                  const std::vector<Rational>& dual) {
  auto fail = [](std::string why) { return CheckReport{false, std::move(why)}; };
  try {
    detail::validate(p);
  } catch (const DimensionError& e) {
    return fail(e.what());
  }
  const std::size_t n = p.num_vars();
  const std::size_t m = p.constraints.size();
  if (primal.size() != n) return fail("primal vector has wrong arity");
  if (dual.size() != m) return fail("dual vector has wrong arity");
  const int s = p.sense == Sense::kMaximize ? 1 : -1;

  Rational primal_obj;
  for (std::size_t j = 0; j < n; ++j) {
    if (primal[j] < p.lower_bound(j))
      return fail("variable " + std::to_string(j) + " below its lower bound");
    primal_obj += p.objective[j] * primal[j];
  }
  for (std::size_t r = 0; r < m; ++r) {
    const auto& c = p.constraints[r];
    if (!satisfies(row_activity(c, primal), c.relation, c.rhs))
      return fail("constraint " + std::to_string(r) + " violated by primal");
  }

  Rational dual_obj;
  for (std::size_t r = 0; r < m; ++r) {
    const int sy = (s * dual[r]).sign();
    const auto rel = p.constraints[r].relation;
    if ((rel == Relation::kLessEqual && sy < 0) || (rel == Relation::kGreaterEqual && sy > 0))
      return fail("dual of constraint " + std::to_string(r) + " has the wrong sign");
    dual_obj += p.constraints[r].rhs * dual[r];
  }
  for (std::size_t j = 0; j < n; ++j) {
    Rational d = p.objective[j];
    for (std::size_t r = 0; r < m; ++r) d -= dual[r] * p.constraints[r].coefficients[j];
    if ((s * d).sign() > 0) return fail("reduced cost of variable " + std::to_string(j) + " has the wrong sign");
    dual_obj += d * p.lower_bound(j);
  }
  if (primal_obj != dual_obj)
    return fail("objective mismatch: primal " + primal_obj.str() + " vs dual " + dual_obj.str());
  return {};
}

inline CheckReport check_farkas(const Problem& p, const std::vector<Rational>& f) {
  auto fail = [](std::string why) { return CheckReport{false, std::move(why)}; };
  const std::size_t n = p.num_vars();
  if (f.size() != p.constraints.size()) return fail("certificate has wrong arity");
  Rational fb;
  for (std::size_t r = 0; r < f.size(); ++r) {
    const auto rel = p.constraints[r].relation;
    if ((rel == Relation::kLessEqual && f[r].sign() < 0) ||
        (rel == Relation::kGreaterEqual && f[r].sign() > 0))
      return fail("multiplier of constraint " + std::to_string(r) + " has the wrong sign");
    fb += f[r] * p.constraints[r].rhs;
  }
  Rational fal;
  for (std::size_t j = 0; j < n; ++j) {
    Rational col;
    for (std::size_t r = 0; r < f.size(); ++r) col += f[r] * p.constraints[r].coefficients[j];
    if (col.sign() < 0) return fail("combined coefficient of variable " + std::to_string(j) + " is negative");
    fal += col * p.lower_bound(j);
  }
  if (!(fb < fal)) return fail("combined right-hand side is not below the lower-bound activity");
  return {};
}

inline CheckReport check_ray(const Problem& p, const std::vector<Rational>& d) {
  auto fail = [](std::string why) { return CheckReport{false, std::move(why)}; };
  if (d.size() != p.num_vars()) return fail("ray has wrong arity");
  for (const auto& v : d)
    if (v.sign() < 0) return fail("ray has a negative component");
  for (std::size_t r = 0; r < p.constraints.size(); ++r) {
    const auto& c = p.constraints[r];
    if (!satisfies(row_activity(c, d), c.relation, Rational(0)))
      return fail("ray leaves constraint " + std::to_string(r));
  }
  Rational gain;
  for (std::size_t j = 0; j < d.size(); ++j) gain += p.objective[j] * d[j];
  if (p.sense == Sense::kMinimize) gain = -gain;
  if (gain.sign() <= 0) return fail("ray does not improve the objective");
  return {};
}

}  // namespace santa::lp
