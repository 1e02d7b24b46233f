#include "ca/harness.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>

#include "ca/error.hpp"
#include "ca/koszul.hpp"

namespace ca {

using nlohmann::ordered_json;

namespace {

// Thrown by precondition gates; becomes a Skipped result.
struct Skip {
  std::string reason;
};

// Lazily computed invariants of one module, shared by the checks.
class Facts {
 public:
  Facts(const Session& s, const FgModule& m, const VerifyOptions& o) : session(s), module(m), options(o) {}

  const Session& session;
  const FgModule& module;
  const VerifyOptions& options;

  const QuotientRing& ring() const { return module.ring(); }
  int n() const { return static_cast<int>(ring().nvars()); }
  int d() const { return ring().dimension().value(); }

  bool zero() {
    if (!zero_) zero_ = is_zero(module);
    return *zero_;
  }
  Dimension dim_m() {
    if (!dim_m_) dim_m_ = dimension(module);
    return *dim_m_;
  }
  int r() { return dim_m().value(); }

  // One resolution over A, long enough for Ext^i with i <= d.
  const Resolution& res_a() {
    if (!res_a_) {
      int cut = options.cutoff > 0 ? options.cutoff : d() + 1;
      res_a_ = free_resolution(module, Over::A, std::max(cut, d() + 1));
    }
    return *res_a_;
  }
  ProjectiveDimension pd_a() {
    const Resolution& res = res_a();
    if (res.complete) return {static_cast<int>(res.complex.length()), false};
    return {res.cutoff, true};
  }
  int pd_r() {
    if (!pd_r_) pd_r_ = n() - depth(module);
    return *pd_r_;
  }
  int depth_a() {
    if (!depth_a_) depth_a_ = ring_depth(ring());
    return *depth_a_;
  }
  // n - max{t : H_t(x_1..x_n; M) != 0}; independent of any resolution.
  int koszul_depth() {
    if (!koszul_depth_) {
      std::vector<Poly> vars;
      for (std::size_t i = 0; i < ring().nvars(); ++i) vars.push_back(Poly::variable(ring().field(), i));
      auto h = koszul_homology(vars, module);
      int top = -1;
      for (int t = 0; t < static_cast<int>(h.size()); ++t)
        if (!is_zero(h[t])) top = t;
      koszul_depth_ = n() - top;
    }
    return *koszul_depth_;
  }
  Dimension ext_dim(int i) {
    auto it = ext_dims_.find(i);
    if (it != ext_dims_.end()) return it->second;
    Dimension v = dimension(ext_module(res_a(), i));
    ext_dims_.emplace(i, v);
    return v;
  }
  int grade() {
    if (!grade_) {
      for (int i = 0; i <= d() && !grade_; ++i)
        if (!ext_dim(i).is_minus_infinity()) grade_ = i;
      if (!grade_) throw std::logic_error("grade: no nonvanishing Ext up to dim A");
    }
    return *grade_;
  }
  const ParamSeq& sop() {
    if (!sop_) sop_ = find_sop(module, options.seed, options.max_tries);
    return *sop_;
  }
  LimitOptions limit_options() const {
    LimitOptions lo;
    lo.nmax = options.nmax;
    lo.cutoff = options.cutoff;
    lo.exec = options.exec;
    return lo;
  }

  void require_nonzero() {
    if (zero()) throw Skip{"M is the zero module"};
  }
  void require_finite_pd() {
    ProjectiveDimension pd = pd_a();
    if (pd.at_least)
      throw Skip{"pd_A M infinite under cutoff " + std::to_string(pd.value) + " (at least " +
                 std::to_string(pd.value) + ")"};
  }

  ordered_json polys(std::span<const Poly> ps) const { return to_json(ps, ring().base()); }

 private:
  std::optional<bool> zero_;
  std::optional<Dimension> dim_m_;
  std::optional<Resolution> res_a_;
  std::optional<int> pd_r_, depth_a_, koszul_depth_, grade_;
  std::map<int, Dimension> ext_dims_;
  std::optional<ParamSeq> sop_;
};

CheckStatus holds(bool ok) { return ok ? CheckStatus::Pass : CheckStatus::Fail; }

// Named session sequences that are systems of parameters for M.
std::vector<std::pair<std::string, std::vector<Poly>>> named_sops(Facts& f) {
  std::vector<std::pair<std::string, std::vector<Poly>>> out;
  for (const auto& [name, seq] : f.session.sequences) {
    if (static_cast<int>(seq.size()) != f.r()) continue;
    if (is_sop(seq, f.module).sop_for_m.value_or(false)) out.emplace_back(name, seq);
  }
  return out;
}

void check_ab(Facts& f, CheckResult& out) {
  f.require_nonzero();
  int kd = f.koszul_depth();
  auto& q = out.quantities;
  q["n"] = f.n();
  q["depth_M"] = kd;
  q["pd_R"] = f.pd_r();
  q["depth_A"] = f.depth_a();
  ProjectiveDimension pd = f.pd_a();
  q["pd_A"] = to_json(pd);
  bool ok = f.pd_r() + kd == f.n();
  if (pd.finite()) {
    ok = ok && pd.value + kd == f.depth_a();
  } else {
    out.reason = "pd_A M infinite under cutoff; only the identity over the polynomial ring was checked";
  }
  out.status = holds(ok);
}

void check_grade_bounds(Facts& f, CheckResult& out) {
  f.require_nonzero();
  int g = f.grade();
  int r = f.r();
  auto& q = out.quantities;
  q["depth_A"] = f.depth_a();
  q["grade"] = g;
  q["dim_M"] = r;
  q["dim_A"] = f.d();
  out.status = holds(f.depth_a() <= g + r && g + r <= f.d());
}

void check_grade_conj(Facts& f, CheckResult& out) {
  f.require_nonzero();
  f.require_finite_pd();
  auto& q = out.quantities;
  q["pd_A"] = f.pd_a().value;
  q["grade"] = f.grade();
  q["dim_M"] = f.r();
  q["dim_A"] = f.d();
  out.status = holds(f.grade() + f.r() == f.d());
}

void check_ht_grade(Facts& f, CheckResult& out) {
  f.require_nonzero();
  if (!f.ring().equidimensional()) throw Skip{"equidimensionality not asserted"};
  f.require_finite_pd();
  std::vector<Poly> ann = annihilator(f.module);
  int ht = height(f.ring(), ann);
  auto& q = out.quantities;
  q["ann"] = f.polys(ann);
  q["height"] = ht;
  q["grade"] = f.grade();
  out.status = holds(ht == f.grade());
}

void check_mult_eq_chi(Facts& f, CheckResult& out) {
  f.require_nonzero();
  if (f.dim_m() >= f.d()) throw Skip{"dim M = dim A"};
  f.require_finite_pd();
  const ParamSeq& sop = f.sop();
  out.inputs["sequence"] = f.polys(sop.elements);
  std::int64_t e = multiplicity(sop.elements, f.module);
  std::int64_t c = chi(f.module, sop.elements, f.options.cutoff);
  out.quantities["multiplicity"] = e;
  out.quantities["chi"] = c;
  out.status = holds(e == c);
}

void check_ext_dim_equiv(Facts& f, CheckResult& out) {
  f.require_nonzero();
  f.require_finite_pd();
  const int r = f.r();
  const ParamSeq& sop = f.sop();
  out.inputs["sequence"] = f.polys(sop.elements);
  LimitReport rep = e_infinity(f.module, sop.elements, f.limit_options());
  Dimension ext = f.ext_dim(f.d() - r);
  out.quantities["e_inf"] = to_json(rep);
  out.quantities["dim_ext"] = to_json(ext);
  out.quantities["r"] = r;
  if (rep.verdict == LimitVerdict::Inconclusive) {
    out.status = CheckStatus::Inconclusive;
    out.reason = "limit verdict inconclusive at nmax";
    return;
  }
  out.status = holds((rep.verdict == LimitVerdict::Positive) == (ext == r));
}

void check_lowpd(Facts& f, CheckResult& out) {
  f.require_nonzero();
  f.require_finite_pd();
  const int r = f.r();
  const int pd = f.pd_a().value;
  if (pd != f.d() - r) throw Skip{"pd M = " + std::to_string(pd) + " differs from d - r = " + std::to_string(f.d() - r)};
  const ParamSeq& sop = f.sop();
  out.inputs["sequence"] = f.polys(sop.elements);
  ordered_json extends = ordered_json::object();
  bool all_extend = sop.certificates.part_of_sop_for_a.value_or(false);
  extends["(found)"] = all_extend;
  for (const auto& [name, seq] : named_sops(f)) {
    bool ok = is_sop(seq, f.module).part_of_sop_for_a.value_or(false);
    extends[name] = ok;
    all_extend = all_extend && ok;
  }
  LimitReport rep = chi_infinity(f.module, sop.elements, f.limit_options());
  Dimension ext = f.ext_dim(f.d() - r);
  auto& q = out.quantities;
  q["pd"] = pd;
  q["sop_extends"] = extends;
  q["chi_inf"] = to_json(rep);
  q["dim_ext"] = to_json(ext);
  q["r"] = r;
  if (!all_extend || ext != r || rep.verdict == LimitVerdict::Zero) {
    out.status = CheckStatus::Fail;
  } else if (rep.verdict == LimitVerdict::Inconclusive) {
    out.status = CheckStatus::Inconclusive;
    out.reason = "limit verdict inconclusive at nmax";
  } else {
    out.status = CheckStatus::Pass;
  }
}

void check_dim_one(Facts& f, CheckResult& out) {
  f.require_nonzero();
  if (f.dim_m() != 1) throw Skip{"dim M = " + f.dim_m().to_string() + ", not 1"};
  f.require_finite_pd();
  Dimension ext = f.ext_dim(f.d() - 1);
  out.quantities["dim_ext"] = to_json(ext);
  out.status = holds(ext == 1);
}

void check_intersection(Facts& f, CheckResult& out) {
  f.require_nonzero();
  f.require_finite_pd();
  const int pd = f.pd_a().value;
  const ParamSeq& sop = f.sop();
  out.inputs["sequence"] = f.polys(sop.elements);
  std::vector<std::pair<std::string, std::vector<Poly>>> seqs{{"(found)", sop.elements}};
  for (auto& named : named_sops(f)) seqs.push_back(std::move(named));
  ordered_json dims = ordered_json::object();
  bool ok = true;
  for (const auto& [name, seq] : seqs) {
    Dimension q = dimension(f.ring(), seq);
    dims[name] = to_json(q);
    ok = ok && q <= pd;
  }
  out.quantities["pd"] = pd;
  out.quantities["dim_A_mod_seq"] = dims;
  out.status = holds(ok);
}

void check_perfect(Facts& f, CheckResult& out) {
  f.require_nonzero();
  f.require_finite_pd();
  const int pd = f.pd_a().value;
  if (pd != f.grade())
    throw Skip{"M is not perfect (pd " + std::to_string(pd) + ", grade " + std::to_string(f.grade()) + ")"};
  auto& q = out.quantities;
  q["pd"] = pd;
  q["grade"] = f.grade();
  q["dim_M"] = f.r();
  q["dim_A"] = f.d();
  out.status = holds(f.grade() + f.r() == f.d());
}

void check_dim_zero(Facts& f, CheckResult& out) {
  f.require_nonzero();
  if (f.dim_m() != 0) throw Skip{"dim M = " + f.dim_m().to_string() + ", not 0"};
  f.require_finite_pd();
  const int pd = f.pd_a().value;
  auto& q = out.quantities;
  q["pd"] = pd;
  q["grade"] = f.grade();
  q["depth_A"] = f.depth_a();
  q["dim_A"] = f.d();
  out.status = holds(pd == f.grade() && f.depth_a() == f.d() && f.grade() == f.d());
}

void check_vanishing(Facts& f, CheckResult& out) {
  f.require_nonzero();
  f.require_finite_pd();
  const Dimension dm = f.dim_m();
  ordered_json per = ordered_json::object();
  bool any = false, positive = false, inconclusive = false;
  for (const auto& [name, ideal] : f.session.ideals) {
    Dimension dj = dimension(f.ring(), ideal);
    if (dj.is_minus_infinity() || !(dm + dj < f.d())) continue;
    if (!length(tensor_cyclic(f.module, ideal)).has_value()) continue;
    LimitReport rep = chi_infinity(f.module, ideal, f.limit_options());
    per[name] = to_json(rep);
    any = true;
    positive = positive || rep.verdict == LimitVerdict::Positive;
    inconclusive = inconclusive || rep.verdict == LimitVerdict::Inconclusive;
  }
  if (!any) throw Skip{"no named ideal J with dim M + dim A/J < dim A and l(M/JM) finite"};
  out.quantities["chi_inf"] = per;
  if (positive) {
    out.status = CheckStatus::Fail;
  } else if (inconclusive) {
    out.status = CheckStatus::Inconclusive;
    out.reason = "limit verdict inconclusive at nmax";
  } else {
    out.status = CheckStatus::Pass;
  }
}

struct CheckDef {
  std::string id;
  std::string statement;
  void (*run)(Facts&, CheckResult&);
};

const std::vector<CheckDef>& registry() {
  static const std::vector<CheckDef> defs{
      {"ab", "Auslander-Buchsbaum: pd M + depth M = depth A", check_ab},
      {"dim-one", "dim M = 1 and pd M finite imply dim Ext^(d-1)(M, A) = 1", check_dim_one},
      {"dim-zero", "dim M = 0 and pd M finite imply M perfect and A Cohen-Macaulay", check_dim_zero},
      {"ext-dim-equiv", "e_inf(x; M) > 0 iff dim Ext^(d-r)(M, A) = r", check_ext_dim_equiv},
      {"grade-bounds", "depth A <= grade M + dim M <= dim A", check_grade_bounds},
      {"grade-conj", "grade M + dim M = dim A (graded, finite pd)", check_grade_conj},
      {"ht-grade", "height ann M = grade M (A equidimensional, finite pd)", check_ht_grade},
      {"intersection", "Intersection Theorem: dim A/(x) <= pd M for a sop x of M", check_intersection},
      {"lowpd", "pd M = d - r: a sop of M extends to A, chi_inf > 0, dim Ext^(d-r)(M, A) = r", check_lowpd},
      {"mult-eq-chi", "e(x; M) = chi(M, A/x) for a sop x of M", check_mult_eq_chi},
      {"perfect", "pd M = grade M implies grade M + dim M = dim A", check_perfect},
      {"vanishing", "chi_inf(M, A/J) = 0 when dim M + dim A/J < dim A", check_vanishing},
  };
  return defs;
}

const CheckDef& find_check(const std::string& id) {
  for (const CheckDef& c : registry())
    if (c.id == id) return c;
  fail(ErrorCode::UnknownCheck, "unknown check \"" + id + "\"");
}

CheckResult run_check(const CheckDef& def, Facts& facts, const std::string& module) {
  CheckResult out;
  out.module = module;
  out.check = def.id;
  out.statement = def.statement;
  out.inputs["module"] = module;
  out.inputs["seed"] = facts.options.seed;
  try {
    def.run(facts, out);
  } catch (const Skip& s) {
    out.status = CheckStatus::Skipped;
    out.reason = s.reason;
  } catch (const Error& e) {
    out.status = CheckStatus::Skipped;
    out.reason = e.what();
  }
  return out;
}

std::vector<CheckResult> run_module(const Session& s, const std::string& name, const VerifyOptions& options) {
  Facts facts(s, s.module(name), options);
  std::vector<CheckResult> out;
  for (const CheckDef& def : registry()) out.push_back(run_check(def, facts, name));
  return out;
}

}  // namespace

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inconclusive: return "inconclusive";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

std::size_t VerificationReport::count(CheckStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [s](const CheckResult& c) { return c.status == s; }));
}

std::span<const std::string> check_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const CheckDef& c : registry()) v.push_back(c.id);
    return v;
  }();
  return ids;
}

VerificationReport verify(const Session& s, const std::string& check_id, const std::string& module,
                          const VerifyOptions& options) {
  const CheckDef& def = find_check(check_id);
  Facts facts(s, s.module(module), options);
  return {{run_check(def, facts, module)}};
}

VerificationReport run_all(const Session& s, const VerifyOptions& options) {
  std::vector<std::string> names;
  for (const auto& [name, m] : s.modules) names.push_back(name);
  std::vector<std::vector<CheckResult>> per(names.size());
  for_each_index(options.exec, names.size(), [&](std::size_t i) { per[i] = run_module(s, names[i], options); });
  VerificationReport report;
  for (auto& rs : per)
    for (auto& r : rs) report.checks.push_back(std::move(r));
  return report;
}

ordered_json to_json(const VerificationReport& r) {
  ordered_json checks = ordered_json::array();
  for (const CheckResult& c : r.checks) {
    ordered_json j;
    j["module"] = c.module;
    j["check"] = c.check;
    j["statement"] = c.statement;
    j["inputs"] = c.inputs;
    j["quantities"] = c.quantities;
    j["status"] = to_string(c.status);
    if (!c.reason.empty()) j["reason"] = c.reason;
    checks.push_back(std::move(j));
  }
  ordered_json summary;
  for (CheckStatus s : {CheckStatus::Pass, CheckStatus::Fail, CheckStatus::Inconclusive, CheckStatus::Skipped})
    summary[to_string(s)] = r.count(s);
  ordered_json out;
  out["checks"] = std::move(checks);
  out["summary"] = std::move(summary);
  return out;
}

ordered_json to_json(Dimension d) {
  if (d.is_minus_infinity()) return nullptr;
  return d.value();
}

ordered_json to_json(const ProjectiveDimension& pd) {
  if (pd.at_least) return ordered_json{{"at_least", pd.value}};
  return pd.value;
}

ordered_json to_json(const Rational& q) { return ordered_json{{"num", q.numerator()}, {"den", q.denominator()}}; }

ordered_json to_json(const LimitReport& r) {
  ordered_json values = ordered_json::array();
  for (const LimitValue& v : r.values)
    values.push_back(ordered_json{{"n", v.n}, {"raw", v.raw}, {"normalized", to_json(v.normalized)}});
  ordered_json t;
  t["positive_min"] = to_json(r.thresholds.positive_min);
  t["stability"] = to_json(r.thresholds.stability);
  t["zero_max"] = to_json(r.thresholds.zero_max);
  t["decay_ratio"] = to_json(r.thresholds.decay_ratio);
  ordered_json out;
  out["kind"] = to_string(r.kind);
  out["codim"] = r.codim;
  out["values"] = std::move(values);
  out["verdict"] = to_string(r.verdict);
  out["thresholds"] = std::move(t);
  return out;
}

ordered_json to_json(std::span<const Poly> polys, const PolyRing& ring) {
  ordered_json out = ordered_json::array();
  for (const Poly& f : polys) out.push_back(to_string(f, ring));
  return out;
}

}  // namespace ca
