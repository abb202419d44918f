#include "nckit/job.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>
#include <set>
#include <sstream>

#include "nckit/error.hpp"
#include "nckit/homology.hpp"
#include "nckit/parse.hpp"
#include "nckit/smash.hpp"

namespace nckit {

namespace {

using njson = nlohmann::json;
using ojson = nlohmann::ordered_json;

const char* const kAnalysisOrder[] = {"hilbert",     "smallness", "trace",
                                      "rpf",         "pertinency", "hsmall",
                                      "auslander",   "twist_check"};

[[noreturn]] void bad(const std::string& where, const std::string& msg) {
  fail(ErrorKind::BadInput, "job file: " + where + ": " + msg);
}

void check_keys(const njson& o, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (auto it = o.begin(); it != o.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) bad(where, "unknown key '" + it.key() + "'");
  }
}

const njson& need(const njson& o, const std::string& where, const char* key) {
  auto it = o.find(key);
  if (it == o.end()) bad(where, std::string("missing '") + key + "'");
  return *it;
}

unsigned need_uint(const njson& v, const std::string& where, unsigned lo,
                   unsigned hi) {
  if (!v.is_number_unsigned() || v.get<unsigned long long>() > hi ||
      v.get<unsigned long long>() < lo)
    bad(where, "expected an integer in [" + std::to_string(lo) + ", " +
                   std::to_string(hi) + "]");
  return v.get<unsigned>();
}

std::string need_string(const njson& v, const std::string& where) {
  if (!v.is_string()) bad(where, "expected a string");
  return v.get<std::string>();
}

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

std::vector<std::vector<std::string>> need_matrix_strings(
    const njson& v, const std::string& where, unsigned n) {
  if (!v.is_array() || v.size() != n)
    bad(where, "expected a " + std::to_string(n) + "x" + std::to_string(n) +
                   " array");
  std::vector<std::vector<std::string>> out;
  for (size_t i = 0; i < v.size(); ++i) {
    const njson& row = v[i];
    std::string rw = where + "[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != n)
      bad(rw, "expected a row of " + std::to_string(n) + " entries");
    std::vector<std::string> r;
    for (size_t j = 0; j < row.size(); ++j)
      r.push_back(need_string(row[j], rw + "[" + std::to_string(j) + "]"));
    out.push_back(std::move(r));
  }
  return out;
}

unsigned generator_count(const JobSpec& job) {
  if (!job.use_catalog) return static_cast<unsigned>(job.raw.generators.size());
  if (job.catalog.name == "polynomial") return job.catalog.n;
  if (job.catalog.name == "skew")
    return static_cast<unsigned>(job.catalog.q.size());
  if (job.catalog.name == "down_up") return 2;
  return 3;  // down_up_assoc_graded
}

void parse_algebra(const njson& a, JobSpec& job) {
  if (!a.is_object()) bad("algebra", "expected an object");
  if (a.contains("catalog")) {
    check_keys(a, "algebra", {"catalog", "n", "q", "alpha", "beta"});
    job.use_catalog = true;
    CatalogSpec& c = job.catalog;
    c.name = need_string(a.at("catalog"), "algebra.catalog");
    if (c.name == "polynomial") {
      c.n = need_uint(need(a, "algebra", "n"), "algebra.n", 1, 8);
    } else if (c.name == "skew") {
      const njson& q = need(a, "algebra", "q");
      if (!q.is_array() || q.empty() || q.size() > 8)
        bad("algebra.q", "expected an n x n array, 1 <= n <= 8");
      c.q = need_matrix_strings(q, "algebra.q",
                                static_cast<unsigned>(q.size()));
    } else if (c.name == "down_up" || c.name == "down_up_assoc_graded") {
      c.alpha = need_string(need(a, "algebra", "alpha"), "algebra.alpha");
      c.beta = need_string(need(a, "algebra", "beta"), "algebra.beta");
    } else {
      bad("algebra.catalog",
          "unknown family '" + c.name +
              "' (polynomial | skew | down_up | down_up_assoc_graded)");
    }
    return;
  }
  check_keys(a, "algebra", {"generators", "degrees", "relations", "multidegrees"});
  RawAlgebraSpec& r = job.raw;
  const njson& gens = need(a, "algebra", "generators");
  if (!gens.is_array() || gens.empty() || gens.size() > 12)
    bad("algebra.generators", "expected 1..12 generator names");
  std::set<std::string> seen;
  for (size_t i = 0; i < gens.size(); ++i) {
    std::string w = "algebra.generators[" + std::to_string(i) + "]";
    std::string name = need_string(gens[i], w);
    if (!valid_identifier(name) || name == "zeta")
      bad(w, "'" + name + "' is not a usable generator name");
    if (!seen.insert(name).second) bad(w, "duplicate generator '" + name + "'");
    r.generators.push_back(name);
  }
  unsigned n = static_cast<unsigned>(r.generators.size());
  if (a.contains("degrees")) {
    const njson& d = a.at("degrees");
    if (!d.is_array() || d.size() != n)
      bad("algebra.degrees", "expected one degree per generator");
    for (size_t i = 0; i < d.size(); ++i)
      r.degrees.push_back(need_uint(
          d[i], "algebra.degrees[" + std::to_string(i) + "]", 1, 32));
  } else {
    r.degrees.assign(n, 1);
  }
  if (a.contains("relations")) {
    const njson& rel = a.at("relations");
    if (!rel.is_array()) bad("algebra.relations", "expected an array of strings");
    for (size_t i = 0; i < rel.size(); ++i)
      r.relations.push_back(
          need_string(rel[i], "algebra.relations[" + std::to_string(i) + "]"));
  }
  if (a.contains("multidegrees")) {
    const njson& md = a.at("multidegrees");
    if (!md.is_array() || md.size() != n)
      bad("algebra.multidegrees", "expected one row per generator");
    size_t width = 0;
    for (size_t i = 0; i < md.size(); ++i) {
      std::string w = "algebra.multidegrees[" + std::to_string(i) + "]";
      const njson& row = md[i];
      if (!row.is_array() || row.empty()) bad(w, "expected a nonempty array");
      if (i == 0) width = row.size();
      if (row.size() != width) bad(w, "rows must all have the same width");
      std::vector<long> out;
      for (size_t j = 0; j < row.size(); ++j) {
        if (!row[j].is_number_integer())
          bad(w + "[" + std::to_string(j) + "]", "expected an integer");
        out.push_back(row[j].get<long>());
      }
      r.multidegrees.push_back(std::move(out));
    }
  }
}

void parse_action(const njson& a, JobSpec& job, unsigned ngen) {
  if (!a.is_object()) bad("action", "expected an object");
  ActionSpec& act = job.action;
  std::string kind = need_string(need(a, "action", "kind"), "action.kind");
  if (kind == "group") {
    check_keys(a, "action", {"kind", "matrices"});
    act.kind = ActionKind::GROUP;
    const njson& ms = need(a, "action", "matrices");
    if (!ms.is_array() || ms.empty())
      bad("action.matrices", "expected a nonempty array of matrices");
    for (size_t i = 0; i < ms.size(); ++i)
      act.matrices.push_back(need_matrix_strings(
          ms[i], "action.matrices[" + std::to_string(i) + "]", ngen));
  } else if (kind == "dual_group") {
    check_keys(a, "action", {"kind", "family", "n", "grading"});
    act.kind = ActionKind::DUAL_GROUP;
    act.family = need_string(need(a, "action", "family"), "action.family");
    if (act.family != "cyclic" && act.family != "dihedral")
      bad("action.family", "expected 'cyclic' or 'dihedral'");
    act.n = need_uint(need(a, "action", "n"), "action.n", 1, 64);
    unsigned order = act.family == "cyclic" ? act.n : 2 * act.n;
    const njson& gr = need(a, "action", "grading");
    if (!gr.is_array() || gr.size() != ngen)
      bad("action.grading", "expected one group-element index per generator");
    for (size_t i = 0; i < gr.size(); ++i)
      act.grading.push_back(
          need_uint(gr[i], "action.grading[" + std::to_string(i) + "]", 0,
                    order - 1));
  } else {
    bad("action.kind", "expected 'group' or 'dual_group'");
  }
}

// ---- execution -------------------------------------------------------------

template <class Fn>
auto with_stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    std::string w = e.what();
    if (w.rfind("stage '", 0) == 0) throw;
    throw Error(e.kind(), "stage '" + std::string(name) + "': " + w);
  }
}

CycloScalar job_scalar(const std::string& src, const CycloField* f,
                       const std::string& where) {
  // The lexer can never produce this name, so every identifier is rejected
  // and only scalar expressions get through.
  static const std::shared_ptr<const Alphabet> none =
      Alphabet::make({"#scalar"}, {1});
  NcPoly p = [&] {
    try {
      return parse_poly(src, none);
    } catch (const Error& e) {
      fail(ErrorKind::BadInput, where + ": " + e.what());
    }
  }();
  CycloScalar c = CycloScalar(Rational(0));
  if (!p.is_zero()) c = p.terms().begin()->second;
  if (f->order() % c.field()->order() != 0)
    fail(ErrorKind::BadInput,
         where + ": '" + src + "' does not lie in Q(zeta_" +
             std::to_string(f->order()) + ")");
  return c.promoted(f);
}

Rational job_rational(const std::string& src, const std::string& where) {
  CycloScalar c = job_scalar(src, CycloField::get(1), where);
  Rational q;
  c.is_rational(&q);
  return q;
}

Matrix job_matrix(const std::vector<std::vector<std::string>>& rows,
                  const CycloField* f, const std::string& where) {
  unsigned n = static_cast<unsigned>(rows.size());
  Matrix m(n, n, f);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      m.at(i, j) = job_scalar(rows[i][j], f,
                              where + "[" + std::to_string(i) + "][" +
                                  std::to_string(j) + "]");
  return m;
}

GradedAlgebra build_algebra(const JobSpec& job, const CycloField* f) {
  unsigned N = job.degree_bound;
  if (job.use_catalog) {
    const CatalogSpec& c = job.catalog;
    if (c.name == "polynomial") return catalog_polynomial(c.n, N, f);
    if (c.name == "skew")
      return catalog_skew(job_matrix(c.q, f, "algebra.q"), N, f);
    Rational a = job_rational(c.alpha, "algebra.alpha");
    Rational b = job_rational(c.beta, "algebra.beta");
    unsigned want = down_up_field_order(a, b);
    if (f->order() % want != 0)
      fail(ErrorKind::BadInput,
           "down-up parameters need cyclotomic_order divisible by " +
               std::to_string(want));
    if (c.name == "down_up") return catalog_down_up(a, b, N, f);
    return catalog_down_up_assoc_graded(a, b, N, f);
  }
  auto alpha = Alphabet::make(job.raw.generators, job.raw.degrees);
  std::vector<NcPoly> rels;
  for (size_t i = 0; i < job.raw.relations.size(); ++i) {
    std::string where = "algebra.relations[" + std::to_string(i) + "]";
    NcPoly p = [&] {
      try {
        return parse_poly(job.raw.relations[i], alpha);
      } catch (const Error& e) {
        fail(ErrorKind::BadInput, where + ": " + e.what());
      }
    }();
    NcPoly prom = NcPoly::zero(alpha);
    for (const auto& [w, cf] : p.terms()) {
      if (f->order() % cf.field()->order() != 0)
        fail(ErrorKind::BadInput,
             where + ": coefficient '" + cf.str() + "' does not lie in Q(zeta_" +
                 std::to_string(f->order()) + ")");
      prom.add_term(w, cf.promoted(f));
    }
    rels.push_back(std::move(prom));
  }
  return make_algebra(alpha, std::move(rels), N, f);
}

// ---- report serialization --------------------------------------------------

ojson num_json(double v) {
  if (std::isinf(v)) return "infinity";
  double r = std::nearbyint(v);
  if (r == v && std::fabs(v) < 9.0e15) return static_cast<long long>(r);
  return v;
}

ojson scal_list(const std::vector<CycloScalar>& v) {
  ojson a = ojson::array();
  for (const CycloScalar& c : v) a.push_back(c.str());
  return a;
}

ojson rational_json(const std::optional<RationalSeries>& r) {
  if (!r) return nullptr;
  ojson o;
  o["num"] = scal_list(r->num);
  o["den"] = scal_list(r->den);
  return o;
}

ojson growth_json(const GrowthEstimate& g, bool with_coeffs) {
  ojson o;
  o["gkdim"] = num_json(g.gkdim);
  o["confidence"] = to_string(g.confidence);
  o["growth_classified"] = g.growth_classified;
  o["finite_dimensional"] = g.finite_dimensional;
  if (g.pole_order_at_1)
    o["pole_order_at_1"] = *g.pole_order_at_1;
  else
    o["pole_order_at_1"] = nullptr;
  o["rational"] = rational_json(g.rational);
  if (with_coeffs) o["coeffs"] = scal_list(g.coeffs);
  return o;
}

const char* verdict_str(ReflectionReport::Verdict v) {
  switch (v) {
    case ReflectionReport::Verdict::CSMALL: return "CSMALL";
    case ReflectionReport::Verdict::NOT_CSMALL: return "NOT_CSMALL";
    default: return "UNDECIDED";
  }
}

}  // namespace

JobSpec parse_job(const std::string& bytes) {
  njson j;
  try {
    j = njson::parse(bytes);
  } catch (const njson::exception& e) {
    fail(ErrorKind::BadInput, std::string("job file: ") + e.what());
  }
  if (!j.is_object()) bad("top level", "expected an object");
  check_keys(j, "top level",
             {"schema", "field", "algebra", "action", "twist", "analyses",
              "degree_bound", "guard"});
  JobSpec job;
  if (j.contains("schema") &&
      (!j.at("schema").is_number_unsigned() || j.at("schema") != 1))
    bad("schema", "this reader understands schema 1");
  if (j.contains("field")) {
    const njson& fld = j.at("field");
    if (!fld.is_object()) bad("field", "expected an object");
    check_keys(fld, "field", {"cyclotomic_order"});
    job.cyclotomic_order = need_uint(need(fld, "field", "cyclotomic_order"),
                                     "field.cyclotomic_order", 1, 512);
  }
  parse_algebra(need(j, "top level", "algebra"), job);
  unsigned ngen = generator_count(job);
  if (j.contains("action")) parse_action(j.at("action"), job, ngen);
  if (j.contains("twist")) {
    const njson& t = j.at("twist");
    if (!t.is_object()) bad("twist", "expected an object");
    check_keys(t, "twist", {"eigen"});
    const njson& e = need(t, "twist", "eigen");
    if (!e.is_array() || e.empty())
      bad("twist.eigen", "expected a nonempty array of directions");
    for (size_t k = 0; k < e.size(); ++k) {
      std::string w = "twist.eigen[" + std::to_string(k) + "]";
      const njson& row = e[k];
      if (!row.is_array() || row.size() != ngen)
        bad(w, "expected one eigenvalue per generator");
      std::vector<std::string> out;
      for (size_t i = 0; i < row.size(); ++i)
        out.push_back(need_string(row[i], w + "[" + std::to_string(i) + "]"));
      job.twist.eigen.push_back(std::move(out));
    }
    job.twist.present = true;
  }
  if (j.contains("degree_bound"))
    job.degree_bound =
        need_uint(j.at("degree_bound"), "degree_bound", 2, 40);
  if (j.contains("guard"))
    job.guard = need_uint(j.at("guard"), "guard", 1, job.degree_bound - 1);
  if (job.guard >= job.degree_bound)
    bad("guard", "guard must be smaller than degree_bound");

  const njson& an = need(j, "top level", "analyses");
  if (!an.is_array() || an.empty())
    bad("analyses", "expected a nonempty array");
  std::set<std::string> requested;
  for (size_t i = 0; i < an.size(); ++i) {
    std::string w = "analyses[" + std::to_string(i) + "]";
    std::string name = need_string(an[i], w);
    bool known = false;
    for (const char* k : kAnalysisOrder)
      if (name == k) known = true;
    if (!known) bad(w, "unknown analysis '" + name + "'");
    if (!requested.insert(name).second) bad(w, "duplicate analysis '" + name + "'");
  }
  for (const char* k : kAnalysisOrder)
    if (requested.count(k)) job.analyses.push_back(k);

  for (const std::string& a : job.analyses) {
    if (a == "hilbert") continue;
    if (job.action.kind == ActionKind::NONE)
      bad("analyses", "'" + a + "' needs an action");
    if (a != "pertinency" && job.action.kind == ActionKind::DUAL_GROUP)
      bad("analyses", "'" + a + "' needs a group action, not dual_group");
    if (a == "twist_check" && !job.twist.present)
      bad("analyses", "'twist_check' needs a twist block");
  }
  return job;
}

Report run(const JobSpec& job) {
  Report rep;
  const CycloField* f = CycloField::get(job.cyclotomic_order);
  unsigned N = job.degree_bound;
  unsigned guard = job.guard;

  GradedAlgebra alg =
      with_stage("algebra", [&] { return build_algebra(job, f); });

  std::vector<Matrix> gen_mats;
  std::optional<GroupAction> g;
  std::optional<FiniteGroup> dual;
  with_stage("action", [&] {
    if (job.action.kind == ActionKind::GROUP) {
      for (size_t i = 0; i < job.action.matrices.size(); ++i)
        gen_mats.push_back(
            job_matrix(job.action.matrices[i], f,
                       "action.matrices[" + std::to_string(i) + "]"));
      g = close_group(alg, gen_mats);
    } else if (job.action.kind == ActionKind::DUAL_GROUP) {
      dual = job.action.family == "cyclic" ? FiniteGroup::cyclic(job.action.n)
                                           : FiniteGroup::dihedral(job.action.n);
    }
  });

  ojson& doc = rep.doc;
  doc["schema"] = 1;
  {
    ojson env;
    env["cyclotomic_order"] = job.cyclotomic_order;
    env["degree_bound"] = N;
    env["guard"] = guard;
    env["complete_to"] = alg.degree_bound();
    doc["environment"] = std::move(env);
  }
  {
    ojson ao;
    ao["source"] = job.use_catalog ? "catalog:" + job.catalog.name : "raw";
    ao["generators"] = alg.alpha->names;
    ao["degrees"] = alg.alpha->degrees;
    ao["dims"] = alg.dims;
    doc["algebra"] = std::move(ao);
  }
  if (job.action.kind != ActionKind::NONE) {
    ojson ao;
    ao["kind"] = job.action.kind == ActionKind::GROUP ? "group" : "dual_group";
    if (g) {
      ao["order"] = g->size();
      ao["generating_matrices"] = job.action.matrices.size();
    } else {
      ao["family"] = job.action.family;
      ao["n"] = job.action.n;
      ao["order"] = dual->size();
      ao["grading"] = job.action.grading;
    }
    doc["action"] = std::move(ao);
  }

  std::optional<SmashAlgebra> smash;
  std::optional<PertinencyReport> pert;
  auto ensure_pertinency = [&] {
    if (pert) return;
    if (g)
      smash = smash_group(alg, *g, N);
    else
      smash = smash_dual_group(alg, *dual, job.action.grading, N);
    pert = pertinency_of_smash(*smash, guard);
  };

  std::optional<HsmallReport> hs;
  std::optional<AuslanderVerdict> aus;
  ojson analyses;

  for (const std::string& name : job.analyses) {
    if (name == "hilbert") {
      with_stage("hilbert", [&] {
        GrowthEstimate ge = gk_estimate(alg, guard);
        ojson o;
        o["certainty"] = "EXACT";
        o["complete_to"] = alg.degree_bound();
        o["dims"] = alg.dims;
        o["growth"] = growth_json(ge, false);
        analyses["hilbert"] = std::move(o);
      });
    } else if (name == "smallness") {
      with_stage("smallness", [&] {
        SmallnessReport s = smallness(*g);
        ojson o;
        o["certainty"] = "EXACT";
        o["small"] = s.small;
        o["witnesses"] = s.witnesses;
        analyses["smallness"] = std::move(o);
      });
    } else if (name == "trace") {
      with_stage("trace", [&] {
        ojson els = ojson::array();
        for (unsigned e = 0; e < g->size(); ++e) {
          TraceData t = trace_series(*g, e, N, guard);
          ojson o;
          o["element"] = e;
          o["coeffs"] = scal_list(t.coeffs);
          o["reconstructed"] = t.rational.has_value();
          if (t.pole_order_at_1)
            o["pole_order_at_1"] = *t.pole_order_at_1;
          else
            o["pole_order_at_1"] = nullptr;
          o["rational"] = rational_json(t.rational);
          els.push_back(std::move(o));
        }
        ojson o;
        o["certainty"] = "EXACT";
        o["max_degree"] = N;
        o["elements"] = std::move(els);
        analyses["trace"] = std::move(o);
      });
    } else if (name == "rpf") {
      with_stage("rpf", [&] {
        ReflectionReport rr = reflection_data(*g, guard);
        ojson o;
        o["verdict"] = verdict_str(rr.verdict);
        o["certainty"] =
            rr.verdict == ReflectionReport::Verdict::UNDECIDED ? "HEURISTIC"
                                                               : "EXACT";
        o["group_rpf"] = rr.group_rpf ? num_json(*rr.group_rpf) : ojson(nullptr);
        ojson per = ojson::array();
        for (const TraceData& t : rr.traces)
          per.push_back(t.rpf ? num_json(*t.rpf) : ojson(nullptr));
        o["rpf_by_element"] = std::move(per);
        o["quasi_reflections"] = rr.quasi_reflections;
        o["quasi_bireflections"] = rr.quasi_bireflections;
        o["degenerate"] = rr.degenerate;
        o["note"] = rr.note;
        analyses["rpf"] = std::move(o);
        if (rr.verdict == ReflectionReport::Verdict::UNDECIDED &&
            !rr.degenerate)
          rep.undecided = true;
      });
    } else if (name == "pertinency") {
      with_stage("pertinency", [&] {
        ensure_pertinency();
        ojson o;
        o["pty"] = num_json(pert->pty);
        o["certainty"] = to_string(pert->certainty);
        o["degenerate"] = pert->degenerate;
        o["complete_to"] = N;
        o["quotient_dims"] = pert->quotient_dims;
        o["base_growth"] = growth_json(pert->base_gk, false);
        o["quotient_growth"] = growth_json(pert->quotient_gk, false);
        analyses["pertinency"] = std::move(o);
        if (pert->certainty == Certainty::HEURISTIC) rep.undecided = true;
      });
    } else if (name == "hsmall") {
      with_stage("hsmall", [&] {
        ensure_pertinency();
        hs = grade_and_hsmall_of_smash(*smash, *pert, guard);
        ojson o;
        if (hs->hsmall)
          o["hsmall"] = *hs->hsmall;
        else
          o["hsmall"] = nullptr;
        o["certainty"] =
            hs->j_exact || hs->degenerate ? "EXACT" : "LOWER_BOUND";
        if (hs->j_exact)
          o["j_exact"] = *hs->j_exact;
        else
          o["j_exact"] = nullptr;
        o["j_lower"] = hs->j_lower;
        o["degenerate"] = hs->degenerate;
        o["note"] = hs->note;
        analyses["hsmall"] = std::move(o);
        if (!hs->hsmall.has_value()) rep.undecided = true;
      });
    } else if (name == "auslander") {
      with_stage("auslander", [&] {
        aus = auslander_check(alg, *g, guard);
        ojson o;
        o["status"] = to_string(aus->status);
        o["injective_to"] = aus->injective_to;
        ojson win;
        win["dmin"] = aus->dmin;
        win["dmax"] = aus->dmin + static_cast<long>(aus->hom_dims.size()) - 1;
        o["window"] = std::move(win);
        ojson rows = ojson::array();
        for (size_t i = 0; i < aus->hom_dims.size(); ++i) {
          ojson r;
          r["d"] = aus->dmin + static_cast<long>(i);
          r["dim"] = aus->hom_dims[i];
          r["stable"] = static_cast<bool>(aus->stable[i]);
          r["match"] = static_cast<bool>(aus->match[i]);
          rows.push_back(std::move(r));
        }
        o["hom"] = std::move(rows);
        o["negative_witness"] = aus->negative_witness;
        o["reason"] = aus->reason;
        analyses["auslander"] = std::move(o);
        if (aus->status == AuslanderStatus::UNDECIDED) rep.undecided = true;
      });
    } else if (name == "twist_check") {
      with_stage("twist_check", [&] {
        TwistData t;
        if (!job.raw.multidegrees.empty()) {
          t.multideg = job.raw.multidegrees;
        } else {
          unsigned n = alg.alpha->size();
          t.multideg.assign(n, std::vector<long>(n, 0));
          for (unsigned i = 0; i < n; ++i) t.multideg[i][i] = 1;
        }
        for (size_t k = 0; k < job.twist.eigen.size(); ++k) {
          std::vector<CycloScalar> row;
          for (size_t i = 0; i < job.twist.eigen[k].size(); ++i)
            row.push_back(job_scalar(job.twist.eigen[k][i], f,
                                     "twist.eigen[" + std::to_string(k) + "][" +
                                         std::to_string(i) + "]"));
          t.eigen.push_back(std::move(row));
        }
        if (t.multideg[0].size() != t.eigen.size())
          fail(ErrorKind::BadInput,
               "twist needs one eigenvalue row per multidegree direction");
        ojson o;
        auto conflict = twist_action_conflict(t, gen_mats);
        o["compatible"] = !conflict.has_value();
        o["conflict"] = conflict ? ojson(*conflict) : ojson(nullptr);
        GradedAlgebra tw = zhang_twist(alg, t);
        if (!conflict) {
          GroupAction gt = close_group(tw, gen_mats);
          SmashAlgebra st = smash_group(tw, gt, N);
          PertinencyReport pt = pertinency_of_smash(st, guard);
          ensure_pertinency();
          bool match = pt.quotient_dims == pert->quotient_dims;
          o["quotient_dims_base"] = pert->quotient_dims;
          o["quotient_dims_twisted"] = pt.quotient_dims;
          o["dims_match"] = match;
          o["pty_base"] = num_json(pert->pty);
          o["pty_twisted"] = num_json(pt.pty);
          Certainty weaker = static_cast<int>(pt.certainty) >
                                     static_cast<int>(pert->certainty)
                                 ? pt.certainty
                                 : pert->certainty;
          o["certainty"] = to_string(weaker);
          if (!match)
            fail(ErrorKind::Inconsistent,
                 "twisted and untwisted smash quotients disagree, which "
                 "contradicts twist invariance");
        } else {
          o["certainty"] = "EXACT";
        }
        analyses["twist_check"] = std::move(o);
      });
    }
  }
  doc["analyses"] = std::move(analyses);

  // Certified-signal triangle: a certified pertinency verdict, a definite
  // h.smallness verdict, and a certified consistency failure must agree.
  unsigned triangle = 0;
  for (const std::string& a : job.analyses)
    if (a == "pertinency" || a == "hsmall" || a == "auslander") ++triangle;
  if (triangle >= 2) {
    with_stage("cross_check", [&] {
      std::optional<bool> sig_pert, sig_hs, sig_aus;
      if (pert && !pert->degenerate) {
        if (pert->certainty == Certainty::EXACT)
          sig_pert = pert->pty >= 2;
        else if (pert->certainty == Certainty::LOWER_BOUND && pert->pty >= 2)
          sig_pert = true;
      }
      if (hs && !hs->degenerate && hs->hsmall) sig_hs = *hs->hsmall;
      if (aus && aus->status == AuslanderStatus::FAILS) sig_aus = false;
      ojson sig;
      sig["pertinency_ge_2"] = sig_pert ? ojson(*sig_pert) : ojson(nullptr);
      sig["hsmall"] = sig_hs ? ojson(*sig_hs) : ojson(nullptr);
      sig["auslander"] = sig_aus ? ojson(*sig_aus) : ojson(nullptr);
      auto clash = [&](const std::optional<bool>& a, const std::optional<bool>& b,
                       const char* an, const char* bn) {
        if (a && b && *a != *b)
          fail(ErrorKind::Inconsistent,
               std::string(an) + " and " + bn +
                   " certify opposite verdicts: " + sig.dump());
      };
      clash(sig_pert, sig_hs, "pertinency", "hsmall");
      clash(sig_pert, sig_aus, "pertinency", "auslander");
      clash(sig_hs, sig_aus, "hsmall", "auslander");
      ojson o;
      o["consistent"] = true;
      o["signals"] = std::move(sig);
      doc["cross_check"] = std::move(o);
    });
  }
  doc["undecided"] = rep.undecided;
  return rep;
}

// ---- rendering -------------------------------------------------------------

namespace {

std::string join_nums(const ojson& arr) {
  std::ostringstream os;
  bool first = true;
  for (const auto& v : arr) {
    if (!first) os << " ";
    first = false;
    if (v.is_string())
      os << v.get<std::string>();
    else
      os << v.dump();
  }
  return os.str();
}

std::string num_str(const ojson& v) {
  if (v.is_null()) return "-";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string yn(const ojson& v) {
  if (v.is_null()) return "unknown";
  return v.get<bool>() ? "yes" : "no";
}

void render_growth(std::ostream& os, const char* label, const ojson& gr) {
  os << "  " << label << "  " << num_str(gr.at("gkdim")) << " ("
     << gr.at("confidence").get<std::string>() << ")";
  if (!gr.at("pole_order_at_1").is_null())
    os << ", pole order at 1 = " << num_str(gr.at("pole_order_at_1"));
  os << "\n";
  if (!gr.at("rational").is_null()) {
    os << "  " << label << "  series num [" << join_nums(gr.at("rational").at("num"))
       << "]  den [" << join_nums(gr.at("rational").at("den")) << "]\n";
  }
}

void render_analysis(std::ostream& os, const std::string& name, const ojson& a) {
  os << name;
  if (a.contains("certainty"))
    os << "  [certainty " << a.at("certainty").get<std::string>() << "]";
  os << "\n";
  if (name == "hilbert") {
    os << "  complete_to  " << num_str(a.at("complete_to")) << "\n";
    os << "  dims   " << join_nums(a.at("dims")) << "\n";
    render_growth(os, "gkdim", a.at("growth"));
  } else if (name == "smallness") {
    os << "  small      " << yn(a.at("small")) << "\n";
    os << "  witnesses  "
       << (a.at("witnesses").empty() ? "(none)" : join_nums(a.at("witnesses")))
       << "\n";
  } else if (name == "trace") {
    os << "  to degree  " << num_str(a.at("max_degree")) << "\n";
    for (const auto& el : a.at("elements")) {
      os << "  element " << num_str(el.at("element")) << ": "
         << join_nums(el.at("coeffs"));
      if (!el.at("pole_order_at_1").is_null())
        os << "  | pole order at 1 = " << num_str(el.at("pole_order_at_1"));
      os << (el.at("reconstructed").get<bool>() ? "  | reconstructed" : "")
         << "\n";
    }
  } else if (name == "rpf") {
    os << "  verdict              " << a.at("verdict").get<std::string>() << "\n";
    os << "  group_rpf            " << num_str(a.at("group_rpf")) << "\n";
    os << "  rpf by element       " << join_nums(a.at("rpf_by_element")) << "\n";
    os << "  quasi_reflections    "
       << (a.at("quasi_reflections").empty()
               ? "(none)"
               : join_nums(a.at("quasi_reflections")))
       << "\n";
    os << "  quasi_bireflections  "
       << (a.at("quasi_bireflections").empty()
               ? "(none)"
               : join_nums(a.at("quasi_bireflections")))
       << "\n";
    if (a.at("degenerate").get<bool>()) os << "  degenerate           yes\n";
    if (!a.at("note").get<std::string>().empty())
      os << "  note                 " << a.at("note").get<std::string>() << "\n";
  } else if (name == "pertinency") {
    os << "  pty            " << num_str(a.at("pty")) << "\n";
    os << "  complete_to    " << num_str(a.at("complete_to")) << "\n";
    os << "  quotient dims  " << join_nums(a.at("quotient_dims")) << "\n";
    render_growth(os, "base    ", a.at("base_growth"));
    render_growth(os, "quotient", a.at("quotient_growth"));
    if (a.at("degenerate").get<bool>()) os << "  degenerate     yes\n";
  } else if (name == "hsmall") {
    os << "  hsmall   " << yn(a.at("hsmall")) << "\n";
    os << "  j        exact " << num_str(a.at("j_exact")) << ", lower bound "
       << num_str(a.at("j_lower")) << "\n";
    if (a.at("degenerate").get<bool>()) os << "  degenerate  yes\n";
    if (!a.at("note").get<std::string>().empty())
      os << "  note     " << a.at("note").get<std::string>() << "\n";
  } else if (name == "auslander") {
    os << "  status        " << a.at("status").get<std::string>() << "\n";
    os << "  injective_to  " << num_str(a.at("injective_to")) << "\n";
    os << "  window        d in [" << num_str(a.at("window").at("dmin")) << ", "
       << num_str(a.at("window").at("dmax")) << "]\n";
    os << "  hom dims      (d  dim  stable  match)\n";
    for (const auto& r : a.at("hom"))
      os << "    " << num_str(r.at("d")) << "  " << num_str(r.at("dim")) << "  "
         << yn(r.at("stable")) << "  " << yn(r.at("match")) << "\n";
    if (!a.at("negative_witness").get<std::string>().empty())
      os << "  negative witness  " << a.at("negative_witness").get<std::string>()
         << "\n";
    if (!a.at("reason").get<std::string>().empty())
      os << "  reason        " << a.at("reason").get<std::string>() << "\n";
  } else if (name == "twist_check") {
    os << "  compatible  " << yn(a.at("compatible")) << "\n";
    if (!a.at("conflict").is_null())
      os << "  conflict    " << a.at("conflict").get<std::string>() << "\n";
    if (a.contains("dims_match")) {
      os << "  dims_match            " << yn(a.at("dims_match")) << "\n";
      os << "  quotient dims base    " << join_nums(a.at("quotient_dims_base"))
         << "\n";
      os << "  quotient dims twisted "
         << join_nums(a.at("quotient_dims_twisted")) << "\n";
      os << "  pty base / twisted    " << num_str(a.at("pty_base")) << " / "
         << num_str(a.at("pty_twisted")) << "\n";
    }
  } else {
    os << a.dump(2) << "\n";
  }
  os << "\n";
}

std::string render_text(const ojson& doc) {
  std::ostringstream os;
  os << "nckit report (schema " << num_str(doc.at("schema")) << ")\n\n";
  const ojson& env = doc.at("environment");
  os << "environment\n";
  os << "  cyclotomic_order  " << num_str(env.at("cyclotomic_order")) << "\n";
  os << "  degree_bound      " << num_str(env.at("degree_bound")) << "\n";
  os << "  guard             " << num_str(env.at("guard")) << "\n";
  os << "  complete_to       " << num_str(env.at("complete_to")) << "\n\n";
  const ojson& alg = doc.at("algebra");
  os << "algebra (" << alg.at("source").get<std::string>() << ")\n";
  os << "  generators  " << join_nums(alg.at("generators")) << "  [degrees "
     << join_nums(alg.at("degrees")) << "]\n";
  os << "  dims        " << join_nums(alg.at("dims")) << "\n\n";
  if (doc.contains("action")) {
    const ojson& act = doc.at("action");
    os << "action (" << act.at("kind").get<std::string>() << ", order "
       << num_str(act.at("order")) << ")\n\n";
  }
  for (const auto& [name, a] : doc.at("analyses").items())
    render_analysis(os, name, a);
  if (doc.contains("cross_check")) {
    const ojson& c = doc.at("cross_check");
    os << "cross_check\n";
    os << "  consistent  " << yn(c.at("consistent")) << "\n";
    const ojson& s = c.at("signals");
    os << "  signals     pertinency>=2: " << yn(s.at("pertinency_ge_2"))
       << ", hsmall: " << yn(s.at("hsmall"))
       << ", auslander: " << yn(s.at("auslander")) << "\n\n";
  }
  os << "undecided  " << yn(doc.at("undecided")) << "\n";
  return os.str();
}

}  // namespace

std::string emit(const Report& r, const std::string& format) {
  if (format == "json") return r.doc.dump(2) + "\n";
  if (format == "text") return render_text(r.doc);
  fail(ErrorKind::BadInput, "unknown format '" + format + "' (json | text)");
}

}  // namespace nckit
