#include "cli.hpp"

#include <filesystem>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ca/error.hpp"
#include "ca/frobmult.hpp"
#include "ca/harness.hpp"
#include "ca/koszul.hpp"
#include "ca/session.hpp"

#ifndef CA_FIXTURE_DIR
#define CA_FIXTURE_DIR "fixtures"
#endif

namespace ca::cli {

namespace {

using nlohmann::ordered_json;

struct Options {
  std::string format = "text";
  std::uint64_t seed = 1;
  int nmax = -1;
  int cutoff = 0;
  int degree_cap = GbOptions{}.degree_cap;
  bool recompute = false;
  bool auto_sop = false;
  bool serial = false;
  int max_tries = 200;
  std::string over = "A";
  std::string seq;
  std::string ideal;
  std::vector<std::string> primes;

  std::string session;
  std::string target;  // module, complex or check id depending on the verb
  std::string module;  // verify only

  Exec exec() const { return serial ? Exec::Serial : Exec::Parallel; }
};

// Result of one verb: a JSON document plus the exit status it implies.
struct Outcome {
  ordered_json doc;
  int status = kOk;
};

// Session argument: a path, or the stem of a shipped fixture.
std::filesystem::path session_path(const std::string& arg) {
  std::filesystem::path p(arg);
  if (std::filesystem::exists(p)) return p;
  std::filesystem::path fx = std::filesystem::path(CA_FIXTURE_DIR) / (arg + ".json");
  if (std::filesystem::exists(fx)) return fx;
  return p;
}

std::vector<Poly> parse_list(const std::string& text, const Session& s) {
  std::vector<Poly> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(parse_poly(item, s.ring->base(), true));
  return out;
}

// A --seq / --ideal argument: a session name, else comma-separated polynomials.
std::vector<Poly> resolve_polys(const std::string& arg, const Session& s) {
  if (auto it = s.sequences.find(arg); it != s.sequences.end()) return it->second;
  if (auto it = s.ideals.find(arg); it != s.ideals.end()) return it->second;
  return parse_list(arg, s);
}

ordered_json polys_json(std::span<const Poly> ps, const Session& s) { return to_json(ps, s.ring->base()); }

ordered_json modvec_json(const ModVec& v, std::size_t rank, const Session& s) {
  std::vector<std::vector<Term>> comps(rank);
  for (const ModTerm& t : v) comps[t.comp].push_back({t.mono, t.coeff});
  std::vector<Poly> ps;
  for (auto& c : comps) ps.emplace_back(s.ring->field(), std::move(c));
  return polys_json(ps, s);
}

ordered_json optional_bool(const std::optional<bool>& b) { return b ? ordered_json(*b) : ordered_json(nullptr); }

std::vector<Poly> sequence_for(const Options& o, const Session& s, const FgModule& m, ordered_json& doc) {
  std::vector<Poly> seq;
  if (!o.seq.empty() && !o.auto_sop) {
    seq = resolve_polys(o.seq, s);
  } else {
    ParamSeq found = find_sop(m, o.seed, o.max_tries);
    seq = found.elements;
    doc["auto_sop"] = true;
  }
  doc["sequence"] = polys_json(seq, s);
  return seq;
}

LimitOptions limit_options(const Options& o) {
  LimitOptions lo;
  lo.nmax = o.nmax;
  lo.cutoff = o.cutoff;
  lo.recompute = o.recompute;
  lo.exec = o.exec();
  return lo;
}

Outcome info(const Options&, const Session& s) {
  const QuotientRing& r = *s.ring;
  ordered_json doc;
  doc["characteristic"] = r.field().characteristic();
  doc["variables"] = r.base().variables;
  doc["ideal"] = polys_json(r.ideal_generators(), s);
  doc["dim_A"] = to_json(r.dimension());
  doc["depth_A"] = ring_depth(r);
  doc["equidimensional"] = r.equidimensional();
  ordered_json mods = ordered_json::object();
  for (const auto& [name, m] : s.modules)
    mods[name] = {{"generators", m.num_generators()}, {"relations", m.presentation().cols()}};
  doc["modules"] = mods;
  ordered_json seqs = ordered_json::object();
  for (const auto& [name, v] : s.sequences) seqs[name] = polys_json(v, s);
  doc["sequences"] = seqs;
  ordered_json ids = ordered_json::object();
  for (const auto& [name, v] : s.ideals) ids[name] = polys_json(v, s);
  doc["ideals"] = ids;
  ordered_json cxs = ordered_json::object();
  for (const auto& [name, c] : s.complexes) {
    ordered_json ranks = ordered_json::array();
    for (std::size_t k = 0; k <= c.length(); ++k) ranks.push_back(c.rank(k));
    cxs[name] = {{"ranks", ranks}};
  }
  doc["complexes"] = cxs;
  ordered_json prs = ordered_json::object();
  for (const auto& [name, p] : s.primes) prs[name] = {{"ideal", polys_json(p.ideal, s)}, {"lengths", p.lengths}};
  doc["primes"] = prs;
  return {doc};
}

Outcome gb(const Options& o, const Session& s) {
  ordered_json doc;
  if (o.target.empty()) {
    doc["target"] = "ring";
    doc["basis"] = polys_json(s.ring->ideal_basis(), s);
  } else if (s.modules.count(o.target)) {
    const FgModule& m = s.module(o.target);
    SubmoduleGB g = presentation_gb(m);
    doc["target"] = o.target;
    ordered_json basis = ordered_json::array();
    for (const ModVec& v : g.basis()) basis.push_back(modvec_json(v, m.num_generators(), s));
    doc["basis"] = basis;
  } else {
    std::vector<Poly> gens = s.ring->ideal_generators();
    for (const Poly& f : resolve_polys(o.target, s)) gens.push_back(f);
    doc["target"] = o.target;
    doc["basis"] = polys_json(basis_polys(ideal_gb(s.ring->field(), s.ring->nvars(), gens, s.ring->options())), s);
  }
  return {doc};
}

Outcome invariants(const Options& o, const Session& s) {
  const FgModule& m = s.module(o.target);
  const int d = s.ring->dimension().value();
  ordered_json doc;
  doc["module"] = o.target;
  Dimension dm = dimension(m);
  doc["dim"] = to_json(dm);
  if (is_zero(m)) {
    for (const char* k : {"codim", "depth", "pd_A", "pd_R", "grade"}) doc[k] = nullptr;
  } else {
    doc["codim"] = d - dm.value();
    doc["depth"] = depth(m);
    doc["pd_A"] = to_json(projective_dimension(m, Over::A, o.cutoff));
    doc["pd_R"] = to_json(projective_dimension(m, Over::R, static_cast<int>(s.ring->nvars()) + 1));
    doc["grade"] = grade(m);
  }
  doc["ann"] = polys_json(annihilator(m), s);
  Length l = length(m);
  doc["length"] = l ? ordered_json(*l) : ordered_json(nullptr);
  return {doc};
}

Outcome resolution(const Options& o, const Session& s) {
  const FgModule& m = s.module(o.target);
  if (o.over != "A" && o.over != "R") fail(ErrorCode::InvalidArgument, "--over must be A or R");
  Over over = o.over == "R" ? Over::R : Over::A;
  Resolution res = free_resolution(m, over, o.cutoff);
  ordered_json doc;
  doc["module"] = o.target;
  doc["over"] = o.over;
  doc["ranks"] = res.ranks();
  doc["degrees"] = res.complex.degrees;
  doc["complete"] = res.complete;
  doc["minimal"] = res.minimal;
  doc["cutoff"] = res.cutoff;
  ProjectiveDimension pd{static_cast<int>(res.complex.length()), !res.complete};
  if (!res.complete) pd.value = res.cutoff;
  doc["pd"] = is_zero(m) ? ordered_json(nullptr) : to_json(pd);
  return {doc};
}

Outcome koszul(const Options& o, const Session& s) {
  const FgModule& m = s.module(o.target);
  if (o.seq.empty()) fail(ErrorCode::InvalidArgument, "koszul needs --seq");
  std::vector<Poly> seq = resolve_polys(o.seq, s);
  ordered_json doc;
  doc["module"] = o.target;
  doc["sequence"] = polys_json(seq, s);
  ordered_json hs = ordered_json::array();
  auto h = koszul_homology(seq, m);
  for (std::size_t t = 0; t < h.size(); ++t) {
    Length l = length(h[t]);
    hs.push_back({{"t", t}, {"dim", to_json(dimension(h[t]))}, {"length", l ? ordered_json(*l) : ordered_json(nullptr)}});
  }
  doc["homology"] = hs;
  try {
    doc["multiplicity"] = multiplicity(seq, m);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotSop) throw;
    doc["multiplicity"] = nullptr;
    doc["note"] = e.what();
  }
  return {doc};
}

Outcome chi_verb(const Options& o, const Session& s) {
  const FgModule& m = s.module(o.target);
  std::string arg = !o.ideal.empty() ? o.ideal : o.seq;
  if (arg.empty()) fail(ErrorCode::InvalidArgument, "chi needs --ideal or --seq");
  std::vector<Poly> j = resolve_polys(arg, s);
  ordered_json doc;
  doc["module"] = o.target;
  doc["ideal"] = polys_json(j, s);
  doc["chi"] = chi(m, j, o.cutoff);
  return {doc};
}

Outcome chi_inf(const Options& o, const Session& s) {
  const FgModule& m = s.module(o.target);
  ordered_json doc;
  doc["module"] = o.target;
  std::vector<Poly> j;
  if (!o.ideal.empty()) {
    j = resolve_polys(o.ideal, s);
    doc["ideal"] = polys_json(j, s);
  } else {
    j = sequence_for(o, s, m, doc);
  }
  doc["report"] = to_json(chi_infinity(m, j, limit_options(o)));
  return {doc};
}

Outcome e_inf(const Options& o, const Session& s) {
  const FgModule& m = s.module(o.target);
  ordered_json doc;
  doc["module"] = o.target;
  std::vector<Poly> seq = sequence_for(o, s, m, doc);
  doc["report"] = to_json(e_infinity(m, seq, limit_options(o)));
  return {doc};
}

Outcome sop(const Options& o, const Session& s) {
  const FgModule& m = s.module(o.target);
  ordered_json doc;
  doc["module"] = o.target;
  SopCertificates c;
  if (!o.seq.empty() && !o.auto_sop) {
    std::vector<Poly> seq = resolve_polys(o.seq, s);
    doc["sequence"] = polys_json(seq, s);
    c = is_sop(seq, m);
  } else {
    ParamSeq p = find_sop(m, o.seed, o.max_tries);
    doc["sequence"] = polys_json(p.elements, s);
    c = p.certificates;
  }
  doc["certificates"] = {{"sop_for_m", optional_bool(c.sop_for_m)},
                         {"part_of_sop_for_a", optional_bool(c.part_of_sop_for_a)},
                         {"higher_koszul_finite", optional_bool(c.higher_koszul_finite)}};
  doc["all"] = c.all();
  return {doc};
}

Outcome assoc(const Options& o, const Session& s) {
  const FgModule& m = s.module(o.target);
  ordered_json doc;
  doc["module"] = o.target;
  std::vector<Poly> seq = sequence_for(o, s, m, doc);
  std::vector<PrimeDatum> primes;
  if (o.primes.empty()) {
    for (const auto& [name, p] : s.primes) primes.push_back(p);
  } else {
    for (const auto& name : o.primes) primes.push_back(s.prime(name));
  }
  if (primes.empty()) fail(ErrorCode::InvalidArgument, "assoc needs prime data");
  int nmax = o.nmax >= 0 ? o.nmax : default_nmax(*s.ring);
  AssociativityReport rep = associativity_check(m, seq, primes, nmax, o.exec());
  ordered_json names = ordered_json::array();
  for (const auto& p : primes) names.push_back(p.name);
  doc["primes"] = names;
  doc["prime_multiplicities"] = rep.prime_multiplicities;
  ordered_json rows = ordered_json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"n", r.n}, {"engine", r.engine}, {"predicted", r.predicted}, {"equal", r.equal}});
  doc["rows"] = rows;
  doc["all_equal"] = rep.all_equal();
  return {doc, rep.all_equal() ? kOk : kCheckFailure};
}

Outcome exactness(const Options& o, const Session& s) {
  const FreeComplex& c = s.complex(o.target);
  ExactnessOptions eo;
  eo.exec = o.exec();
  ExactnessReport rep = be_exactness(c, o.seed, eo);
  ordered_json doc;
  doc["complex"] = o.target;
  doc["verdict"] = to_string(rep.verdict);
  ordered_json maps = ordered_json::array();
  for (const MapExactness& me : rep.maps) {
    maps.push_back({{"k", me.k},
                    {"expected_rank", me.expected_rank},
                    {"rank_lower", me.rank_lower},
                    {"rank_upper", me.rank_upper},
                    {"rank", me.rank ? ordered_json(*me.rank) : ordered_json(nullptr)},
                    {"grade", me.grade ? ordered_json(*me.grade) : ordered_json(nullptr)},
                    {"required_grade", me.required_grade},
                    {"ok", me.ok}});
  }
  doc["maps"] = maps;
  return {doc};
}

VerifyOptions verify_options(const Options& o) {
  VerifyOptions vo;
  vo.seed = o.seed;
  vo.cutoff = o.cutoff;
  vo.nmax = o.nmax;
  vo.max_tries = o.max_tries;
  vo.exec = o.exec();
  return vo;
}

Outcome verify_verb(const Options& o, const Session& s) {
  VerificationReport r = verify(s, o.target, o.module, verify_options(o));
  return {to_json(r), r.any_fail() ? kCheckFailure : kOk};
}

Outcome run_all_verb(const Options& o, const Session& s) {
  VerificationReport r = run_all(s, verify_options(o));
  return {to_json(r), r.any_fail() ? kCheckFailure : kOk};
}

// Text rendering: nested "key: value" lines; {num, den} as a fraction and
// {at_least} as a bound.
std::string scalar_text(const ordered_json& j) {
  if (j.is_null()) return "-";
  if (j.is_object() && j.empty()) return "(none)";
  if (j.is_string()) return j.get<std::string>();
  if (j.is_object() && j.size() == 2 && j.contains("num") && j.contains("den")) {
    auto den = j["den"].get<std::int64_t>();
    return std::to_string(j["num"].get<std::int64_t>()) + (den == 1 ? "" : "/" + std::to_string(den));
  }
  if (j.is_object() && j.size() == 1 && j.contains("at_least"))
    return ">= " + std::to_string(j["at_least"].get<int>());
  return j.dump();
}

bool inline_value(const ordered_json& j) {
  if (!j.is_structured() || j.empty()) return true;
  if (j.is_object()) return (j.size() == 2 && j.contains("num")) || (j.size() == 1 && j.contains("at_least"));
  for (const auto& e : j)
    if (!inline_value(e)) return false;
  return true;
}

std::string inline_text(const ordered_json& j) {
  if (!j.is_array()) return scalar_text(j);
  std::string s = "[";
  for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + inline_text(j[i]);
  return s + "]";
}

void render(const ordered_json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (inline_value(v)) {
        out << pad << k << ": " << inline_text(v) << '\n';
      } else {
        out << pad << k << ":\n";
        render(v, out, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (inline_value(e)) {
        out << pad << "- " << inline_text(e) << '\n';
      } else if (e.is_object()) {
        // First key on the dash line, the rest aligned under it.
        std::ostringstream body;
        render(e, body, indent + 2);
        std::string text = body.str();
        out << pad << "- " << text.substr(static_cast<std::size_t>(indent) + 2);
      } else {
        out << pad << "-\n";
        render(e, out, indent + 2);
      }
    }
  } else {
    out << pad << scalar_text(j) << '\n';
  }
}

int status_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::DegreeLimit:
    case ErrorCode::PdCutoff:
    case ErrorCode::TriesExhausted: return kResourceCap;
    default: return kInputError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Commutative algebra engine over F_p: invariants, Frobenius limits and verification checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", o.seed, "Seed for random choices");
  app.add_option("--nmax", o.nmax, "Frobenius steps (default 3 for p = 2, else 2)");
  app.add_option("--cutoff", o.cutoff, "Resolution cutoff over A (0: dim A + 1)");
  app.add_option("--degree-cap", o.degree_cap, "Degree cap for Groebner computations");
  app.add_flag("--recompute", o.recompute, "Resolve each F^n(M) from scratch");
  app.add_flag("--auto-sop", o.auto_sop, "Search for a system of parameters");
  app.add_flag("--serial", o.serial, "Run the serial reference path");
  app.add_option("--max-tries", o.max_tries, "Candidate budget for the sop search");
  app.add_option("--over", o.over, "Ring for resolutions (A or R)");
  app.add_option("--seq", o.seq, "Sequence: a session name or comma-separated polynomials");
  app.add_option("--ideal", o.ideal, "Ideal: a session name or comma-separated polynomials");
  app.add_option("--prime", o.primes, "Prime data name, repeatable (default: all)")
      ->allow_extra_args(false)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  using Handler = Outcome (*)(const Options&, const Session&);
  struct Verb {
    const char* name;
    const char* help;
    const char* target;  // positional after the session, nullptr if none
    bool target_required;
    Handler run;
  };
  const std::vector<Verb> verbs{
      {"info", "Ring and session summary", nullptr, false, info},
      {"gb", "Groebner basis of the ring ideal, a named ideal or a module", "name", false, gb},
      {"invariants", "dim, codim, depth, pd, grade, ann, length of a module", "module", true, invariants},
      {"resolution", "Free resolution of a module", "module", true, resolution},
      {"koszul", "Koszul homology and multiplicity", "module", true, koszul},
      {"chi", "Intersection multiplicity chi(M, A/J)", "module", true, chi_verb},
      {"chi-inf", "chi(F^n(M), A/J) for n = 0..nmax", "module", true, chi_inf},
      {"e-inf", "e(x; F^n(M)) for n = 0..nmax", "module", true, e_inf},
      {"sop", "Certify or search for a system of parameters", "module", true, sop},
      {"assoc", "Associativity formula against prime data", "module", true, assoc},
      {"exactness", "Buchsbaum-Eisenbud exactness of a complex", "complex", true, exactness},
      {"verify", "Run one check on one module", "check", true, verify_verb},
      {"run-all", "Run every check on every module", nullptr, false, run_all_verb},
  };
  std::vector<std::pair<CLI::App*, Handler>> subs;
  for (const Verb& v : verbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    sub->add_option("session", o.session, "Session file or fixture name")->required();
    if (v.target) sub->add_option(v.target, o.target)->required(v.target_required);
    if (std::string(v.name) == "verify") sub->add_option("module", o.module)->required();
    subs.emplace_back(sub, v.run);
  }

  std::vector<std::string> argv_store{"ca"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    GbOptions gbo;
    gbo.degree_cap = o.degree_cap;
    Session s = load_session(session_path(o.session), gbo);
    Outcome result;
    for (auto& [sub, handler] : subs)
      if (sub->parsed()) result = handler(o, s);
    if (o.format == "json") {
      out << result.doc.dump(2) << '\n';
    } else {
      render(result.doc, out, 0);
    }
    return result.status;
  } catch (const Error& e) {
    err << "ca: " << e.what() << '\n';
    return status_for(e);
  }
}

}  // namespace ca::cli
