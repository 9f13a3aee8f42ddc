#include "pooling/instance.hpp"

#include <algorithm>
#include <sstream>

namespace pooling {

namespace {

Rational sum(const std::vector<Rational>& v) {
  Rational s;
  for (const auto& e : v) s += e;
  return s;
}

// Violation magnitude in the requested mode. In Float mode the comparison is
// done in binary64 and anything within kFloatTol counts as satisfied.
bool exceeds(const Rational& amount, Mode mode) {
  if (mode == Mode::Exact) return amount.sign() > 0;
  return amount.to_double() > kFloatTol;
}

void require_shape(std::vector<Violation>& out, bool ok, const std::string& where) {
  if (!ok) out.push_back({"shape", where, {}, Rational(0)});
}

}  // namespace

Rational Flow::total_in() const { return sum(x); }
Rational Flow::total_out() const { return sum(y); }

std::string ValidationReport::first_message() const {
  if (violations.empty()) return "ok";
  const Violation& v = violations.front();
  std::ostringstream os;
  os << v.constraint << " at " << v.where;
  if (!v.index.empty()) {
    os << "[";
    for (size_t i = 0; i < v.index.size(); ++i) {
      if (i) os << ",";
      os << v.index[i];
    }
    os << "]";
  }
  if (v.magnitude.sign() != 0) os << " (by " << v.magnitude.str() << ")";
  return os.str();
}

ValidationReport validate(const PoolingInstance& inst) {
  ValidationReport rep;
  auto& out = rep.violations;

  if (inst.m < 1) out.push_back({"shape", "m", {}, Rational(0)});
  if (inst.n < 1) out.push_back({"shape", "n", {}, Rational(0)});
  if (inst.q < 1) out.push_back({"shape", "q", {}, Rational(0)});
  if (!rep.ok()) return rep;

  const size_t m = static_cast<size_t>(inst.m);
  const size_t n = static_cast<size_t>(inst.n);
  const size_t q = static_cast<size_t>(inst.q);

  require_shape(out, inst.c_in.size() == m, "c_in");
  require_shape(out, inst.c_out.size() == n, "c_out");
  require_shape(out, inst.cap_in.size() == m, "cap_in");
  require_shape(out, inst.cap_out.size() == n, "cap_out");
  require_shape(out, inst.u_in.size() == m, "u_in");
  require_shape(out, inst.u_out.size() == n, "u_out");

  require_shape(out, inst.lambda.size() == m, "lambda");
  for (const auto& row : inst.lambda) require_shape(out, row.size() == q, "lambda");
  require_shape(out, inst.mu.size() == n, "mu");
  for (const auto& row : inst.mu) require_shape(out, row.size() == q, "mu");
  if (!rep.ok()) return rep;

  auto check_caps = [&out](const std::vector<Rational>& caps, const std::string& where) {
    for (size_t i = 0; i < caps.size(); ++i) {
      if (caps[i].sign() < 0) {
        out.push_back({"capacity-nonnegative", where, {static_cast<int>(i)}, -caps[i]});
      }
    }
  };
  check_caps(inst.cap_in, "cap_in");
  check_caps(inst.cap_out, "cap_out");
  check_caps(inst.u_in, "u_in");
  check_caps(inst.u_out, "u_out");
  if (inst.cap_pool.sign() < 0) {
    out.push_back({"capacity-nonnegative", "cap_pool", {}, -inst.cap_pool});
  }
  return rep;
}

PreprocessResult preprocess(const PoolingInstance& inst) {
  PreprocessResult res;

  // min over inputs of each quality value; an output whose bound sits below
  // this for some quality can never be served by any blend.
  std::vector<Rational> min_lambda(inst.q);
  for (int k = 0; k < inst.q; ++k) {
    Rational mn = inst.lambda[0][k];
    for (int i = 1; i < inst.m; ++i) mn = std::min(mn, inst.lambda[i][k]);
    min_lambda[k] = mn;
  }

  for (int j = 0; j < inst.n; ++j) {
    bool unreachable = false;
    for (int k = 0; k < inst.q && !unreachable; ++k) {
      if (min_lambda[k] > inst.mu[j][k]) unreachable = true;
    }
    if (unreachable) {
      res.removed.push_back(j);
    } else {
      res.kept.push_back(j);
    }
  }

  PoolingInstance red = inst;
  red.n = static_cast<int>(res.kept.size());
  red.c_out.clear();
  red.mu.clear();
  red.cap_out.clear();
  red.u_out.clear();
  for (int j : res.kept) {
    red.c_out.push_back(inst.c_out[j]);
    red.mu.push_back(inst.mu[j]);
    red.cap_out.push_back(inst.cap_out[j]);
    red.u_out.push_back(inst.u_out[j]);
  }
  res.instance = std::move(red);
  return res;
}

Rational objective(const PoolingInstance& inst, const Flow& f) {
  Rational total;
  for (int i = 0; i < inst.m; ++i) total += inst.c_in[i] * f.x[i];
  for (int j = 0; j < inst.n; ++j) total += inst.c_out[j] * f.y[j];
  return total;
}

std::optional<std::vector<Rational>> pool_quality(const PoolingInstance& inst,
                                                  const Flow& f) {
  const Rational out = f.total_out();
  if (out.sign() <= 0) return std::nullopt;
  std::vector<Rational> p(inst.q);
  for (int k = 0; k < inst.q; ++k) {
    Rational acc;
    for (int i = 0; i < inst.m; ++i) acc += inst.lambda[i][k] * f.x[i];
    p[k] = acc / out;
  }
  return p;
}

ValidationReport check_flow_feasible(const PoolingInstance& inst, const Flow& f,
                                     Mode mode) {
  ValidationReport rep;
  auto& out = rep.violations;
  if (f.x.size() != static_cast<size_t>(inst.m) ||
      f.y.size() != static_cast<size_t>(inst.n)) {
    out.push_back({"shape", "flow", {}, Rational(0)});
    return rep;
  }

  for (int i = 0; i < inst.m; ++i) {
    if (exceeds(-f.x[i], mode)) out.push_back({"nonneg", "x", {i}, -f.x[i]});
  }
  for (int j = 0; j < inst.n; ++j) {
    if (exceeds(-f.y[j], mode)) out.push_back({"nonneg", "y", {j}, -f.y[j]});
  }

  // Conservation at the pool: inflow equals outflow.
  const Rational imbalance = f.total_in() - f.total_out();
  if (exceeds(imbalance.abs(), mode)) {
    out.push_back({"Eq1", "pool", {}, imbalance.abs()});
  }

  for (int i = 0; i < inst.m; ++i) {
    const Rational over = f.x[i] - inst.cap_in[i];
    if (exceeds(over, mode)) out.push_back({"Eq2", "cap_in", {i}, over});
  }
  {
    const Rational over = f.total_in() - inst.cap_pool;
    if (exceeds(over, mode)) out.push_back({"Eq3", "cap_pool", {}, over});
  }
  for (int j = 0; j < inst.n; ++j) {
    const Rational over = f.y[j] - inst.cap_out[j];
    if (exceeds(over, mode)) out.push_back({"Eq4", "cap_out", {j}, over});
  }
  for (int i = 0; i < inst.m; ++i) {
    const Rational over = f.x[i] - inst.u_in[i];
    if (exceeds(over, mode)) out.push_back({"Eq5", "u_in", {i}, over});
  }
  for (int j = 0; j < inst.n; ++j) {
    const Rational over = f.y[j] - inst.u_out[j];
    if (exceeds(over, mode)) out.push_back({"Eq5", "u_out", {j}, over});
  }
  return rep;
}

ValidationReport check_quality_feasible(const PoolingInstance& inst, const Flow& f,
                                        Mode mode) {
  ValidationReport rep;
  auto& out = rep.violations;
  if (f.x.size() != static_cast<size_t>(inst.m) ||
      f.y.size() != static_cast<size_t>(inst.n)) {
    out.push_back({"shape", "flow", {}, Rational(0)});
    return rep;
  }

  const auto p = pool_quality(inst, f);
  if (!p) return rep;  // zero outflow: vacuously feasible

  for (int j = 0; j < inst.n; ++j) {
    if (f.y[j].sign() <= 0) continue;
    for (int k = 0; k < inst.q; ++k) {
      const Rational over = (*p)[k] - inst.mu[j][k];
      if (exceeds(over, mode)) out.push_back({"Eq7", "quality", {j, k}, over});
    }
  }
  return rep;
}

}  // namespace pooling
