#include "flagacs/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace flagacs {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return std::round(ms * 10.0) / 10.0;
}

bool intermediate_cd(const LieType& t, const std::vector<std::size_t>& theta) {
  return (t.family == 'C' || t.family == 'D') && !theta.empty();
}

// Verdicts compared across models: certified and sampled both count as
// "not integrable".
std::string verdict_class(IntegrabilityStatus s) {
  switch (s) {
    case IntegrabilityStatus::integrable_witness: return "integrable";
    case IntegrabilityStatus::not_integrable_certified:
    case IntegrabilityStatus::not_integrable_sampled: return "not_integrable";
    case IntegrabilityStatus::family_infeasible: return "no_acs";
    case IntegrabilityStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

// A sign flip applies only to types with that many non-simple roots.
ChevalleyOptions effective_chevalley(const LieType& t, const ChevalleyOptions& opts) {
  ChevalleyOptions out = opts;
  RootSystem rs(t);
  if (out.flip_extraspecial && *out.flip_extraspecial >= rs.positive().size() - rs.rank()) out.flip_extraspecial.reset();
  return out;
}

Json matrix_json(const QMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).str());
    rows.push_back(std::move(r));
  }
  return rows;
}

QMatrix matrix_from_json(const Json& rows) {
  const std::size_t n = rows.size();
  const std::size_t c = n == 0 ? 0 : rows[0].size();
  QMatrix m(n, c);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged matrix");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Rational::parse(rows[i][j].get<std::string>());
  }
  return m;
}

Json vector_json(const QVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

// "X13-X24", "2*X12+1/2*X34".
std::string combination(const QVector& v, const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    Rational c = v[i];
    if (c.sign() < 0) {
      out += "-";
      c = -c;
    } else if (!out.empty()) {
      out += "+";
    }
    if (!c.is_one()) out += c.str() + "*";
    out += labels[i];
  }
  return out.empty() ? "0" : out;
}

Json tree_json(const CaseNode& node) {
  Json j;
  if (node.children.empty()) {
    j["outcome"] = node.outcome;
    if (!node.detail.empty()) j["detail"] = node.detail;
    return j;
  }
  j["step"] = node.step;
  Json cases = Json::array();
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    Json c;
    c["case"] = i < node.cases.size() ? node.cases[i] : "";
    c["node"] = tree_json(node.children[i]);
    cases.push_back(std::move(c));
  }
  j["cases"] = std::move(cases);
  return j;
}

std::vector<std::string> labels_of(const IsotropyModel& im) {
  std::vector<std::string> out;
  for (const auto& b : im.basis) out.push_back(b.label);
  return out;
}

Json classes_json(const IsotropyModel& im) {
  const RootSystem& rs = im.sc->roots();
  Json arr = Json::array();
  for (const auto& c : im.classes.classes) {
    Json e;
    Json roots = Json::array();
    for (const auto& r : c.roots) roots.push_back(rs.format(r));
    e["roots"] = std::move(roots);
    e["size"] = c.roots.size();
    e["parity"] = c.even() ? "even" : "odd";
    arr.push_back(std::move(e));
  }
  return arr;
}

Json acs_json(const ModelVerdict& mv) {
  const auto labels = labels_of(mv.im);
  const ExistenceResult& ex = mv.existence;
  Json j;
  j["verdict"] = to_string(ex.status);
  if (ex.witness) {
    j["construction"] = ex.witness->construction;
    j["j"] = matrix_json(ex.witness->j);
  }
  if (ex.obstruction) {
    const Obstruction& o = *ex.obstruction;
    j["kind"] = o.kind;
    j["dim"] = o.dim;
    Json basis = Json::array();
    for (const auto& v : o.subspace.basis()) basis.push_back(vector_json(v));
    j["basis"] = std::move(basis);
    Json span = Json::array();
    for (const auto& v : o.subspace.basis()) span.push_back(combination(v, labels));
    j["span"] = std::move(span);
    j["derivation"] = o.derivation;
  }
  if (!ex.note.empty()) j["note"] = ex.note;
  return j;
}

Json integrability_json(const ModelVerdict& mv, bool full_tree) {
  const IntegrabilityVerdict& v = mv.verdict;
  Json j;
  j["verdict"] = to_string(v.status);
  if (!v.note.empty()) j["note"] = v.note;
  if (v.family) {
    Json vars = Json::array();
    for (const auto& var : v.family->vars->all()) vars.push_back(var.name);
    j["parameters"] = std::move(vars);
    Json blocks = Json::array();
    for (const auto& b : v.family->blocks) blocks.push_back(b.kind);
    j["blocks"] = std::move(blocks);
  }
  j["nodes"] = v.nodes;
  j["samples_tested"] = v.samples_tested;
  if (v.point && v.family) {
    Json pt;
    for (std::size_t i = 0; i < v.point->size(); ++i) pt[(*v.family->vars)[i].name] = (*v.point)[i].str();
    j["point"] = std::move(pt);
  }
  if (v.j) j["j"] = matrix_json(*v.j);
  if (v.tree) {
    j["case_tree_leaves"] = v.tree->leaves();
    if (full_tree) j["case_tree"] = tree_json(*v.tree);
  }
  return j;
}

Json model_json(const ModelVerdict& mv, bool timings, bool full_tree) {
  Json j;
  j["model"] = to_string(mv.model);
  j["module_dim"] = mv.im.dim();
  j["basis"] = labels_of(mv.im);
  j["m_classes"] = classes_json(mv.im);
  j["all_even"] = mv.im.classes.all_even();
  j["moduli_dimension"] = mv.moduli_dimension;
  j["acs"] = acs_json(mv);
  j["integrability"] = integrability_json(mv, full_tree);
  if (timings) {
    Json t;
    t["build"] = mv.t_build;
    t["decomposition"] = mv.t_decompose;
    t["nijenhuis"] = mv.t_nijenhuis;
    j["timings_ms"] = std::move(t);
  }
  return j;
}

ModelVerdict run_model(const LieType& t, const std::vector<std::size_t>& theta, ModuleModel model,
                       const RunConfig& cfg, std::uint64_t seed) {
  ModelVerdict mv;
  mv.model = model;
  auto t0 = Clock::now();
  mv.im = build_isotropy(FlagSpec{t, theta, model, effective_chevalley(t, cfg.chevalley)});
  mv.t_build = ms_since(t0);
  const IsotropyModel& im = mv.im;

  if (!im.classes.all_even()) {
    t0 = Clock::now();
    mv.existence = acs_exists(im, Decomposition{});
    mv.moduli_dimension = commutant(im).dim();
    mv.t_decompose = ms_since(t0);
    mv.verdict.status = IntegrabilityStatus::family_infeasible;
    mv.verdict.existence = mv.existence;
    mv.verdict.note = "no invariant almost complex structure";
    return mv;
  }
  t0 = Clock::now();
  mv.decomposition = decompose(im, seed);
  mv.existence = acs_exists(im, *mv.decomposition);
  mv.moduli_dimension = mv.decomposition->comm.dim();
  mv.t_decompose = ms_since(t0);

  t0 = Clock::now();
  VerdictOptions vo;
  vo.seed = seed;
  vo.samples = cfg.samples;
  mv.verdict = integrability_verdict(im, *mv.decomposition, vo);
  mv.t_nijenhuis = ms_since(t0);
  return mv;
}

std::vector<std::vector<std::size_t>> all_thetas(const LieType& t) {
  const std::size_t r = static_cast<std::size_t>(t.rank);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << r); ++mask) {
    std::vector<std::size_t> m;
    for (std::size_t i = 0; i < r; ++i)
      if (mask >> i & 1) m.push_back(i);
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

const char* kFamilyOrder = "ABCDG";

}  // namespace

std::string to_string(ModelPreference p) {
  switch (p) {
    case ModelPreference::automatic: return "auto";
    case ModelPreference::n_minus: return "n_minus";
    case ModelPreference::m_theta: return "m_theta";
    case ModelPreference::both: return "both";
  }
  return "?";
}

ModelPreference parse_model_preference(const std::string& s) {
  if (s == "auto") return ModelPreference::automatic;
  if (s == "n_minus") return ModelPreference::n_minus;
  if (s == "m_theta") return ModelPreference::m_theta;
  if (s == "both") return ModelPreference::both;
  throw std::invalid_argument("unknown model preference '" + s + "'");
}

ModuleModel default_model(const LieType& t, const std::vector<std::size_t>& theta) {
  return intermediate_cd(t, theta) ? ModuleModel::m_theta : ModuleModel::n_minus;
}

std::string flag_name(const LieType& t, const std::string& theta_text) {
  return t.str() + " {" + theta_text + "}";
}

std::uint64_t flag_seed(std::uint64_t master, const LieType& t, const std::vector<std::size_t>& theta) {
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&](unsigned char c) {
    h ^= c;
    h *= 1099511628211ULL;
  };
  for (char c : t.str()) feed(static_cast<unsigned char>(c));
  feed('|');
  for (std::size_t i : theta) {
    for (char c : std::to_string(i)) feed(static_cast<unsigned char>(c));
    feed(',');
  }
  // splitmix64 finalizer over the combination
  std::uint64_t z = h ^ (master + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

FlagRecord analyze_flag(const LieType& t, const std::vector<std::size_t>& theta, const RunConfig& cfg) {
  t.validate();
  FlagRecord rec;
  rec.lie_type = t;
  rec.theta = theta;
  std::sort(rec.theta.begin(), rec.theta.end());
  RootSystem rs(t);
  rec.theta_text = format_theta(rs, rec.theta);

  ModuleModel primary = ModuleModel::n_minus;
  switch (cfg.model) {
    case ModelPreference::n_minus: primary = ModuleModel::n_minus; break;
    case ModelPreference::m_theta:
      primary = (t.family == 'C' || t.family == 'D') ? ModuleModel::m_theta : ModuleModel::n_minus;
      break;
    case ModelPreference::automatic:
    case ModelPreference::both: primary = default_model(t, rec.theta); break;
  }
  const std::uint64_t seed = flag_seed(cfg.seed, t, rec.theta);
  rec.verdicts.push_back(run_model(t, rec.theta, primary, cfg, seed));
  rec.parity_even = rec.verdicts.front().im.classes.all_even();
  if (cfg.model == ModelPreference::both && intermediate_cd(t, rec.theta)) {
    ModuleModel other = primary == ModuleModel::m_theta ? ModuleModel::n_minus : ModuleModel::m_theta;
    rec.verdicts.push_back(run_model(t, rec.theta, other, cfg, seed));
    rec.models_agree = verdict_class(rec.verdicts[0].verdict.status) == verdict_class(rec.verdicts[1].verdict.status) &&
                       rec.verdicts[0].existence.status == rec.verdicts[1].existence.status;
  }
  return rec;
}

ClassificationReport classify(const RunConfig& cfg) {
  std::vector<LieType> types = cfg.types;
  for (const auto& t : types) {
    t.validate();
    if (t.rank > 12) throw std::invalid_argument("rank guard: " + t.str() + " exceeds rank 12");
  }
  std::sort(types.begin(), types.end(), [](const LieType& a, const LieType& b) {
    auto pa = std::string(kFamilyOrder).find(a.family), pb = std::string(kFamilyOrder).find(b.family);
    return pa != pb ? pa < pb : a.rank < b.rank;
  });
  types.erase(std::unique(types.begin(), types.end()), types.end());

  std::vector<std::pair<LieType, std::vector<std::size_t>>> jobs;
  for (const auto& t : types)
    for (auto& th : all_thetas(t)) jobs.emplace_back(t, std::move(th));

  ClassificationReport rep;
  rep.config = cfg;
  rep.records.resize(jobs.size());
  std::size_t threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(1, jobs.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= jobs.size()) return;
      try {
        rep.records[k] = analyze_flag(jobs[k].first, jobs[k].second, cfg);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = jobs.size();
        return;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (const auto& r : rep.records) {
    const std::string name = flag_name(r.lie_type, r.theta_text);
    const ModelVerdict& mv = r.verdicts.front();
    if (r.parity_even) rep.even_flags.push_back(name);
    if (mv.existence.status == ExistenceResult::Status::witness) rep.acs_flags.push_back(name);
    if (mv.verdict.status == IntegrabilityStatus::integrable_witness) rep.integrable_flags.push_back(name);
  }
  return rep;
}

Json to_json(const FlagRecord& r, bool timings, bool full_tree) {
  const ModelVerdict& mv = r.verdicts.front();
  Json j;
  j["id"] = flag_name(r.lie_type, r.theta_text);
  j["lie_type"] = r.lie_type.str();
  j["family"] = std::string(1, r.lie_type.family);
  j["rank"] = r.lie_type.rank;
  j["theta"] = r.theta_text;
  j["theta_indices"] = r.theta;
  j["chevalley_convention"] = mv.im.sc->convention_id();
  Json primary = model_json(mv, timings, full_tree);
  for (auto it = primary.begin(); it != primary.end(); ++it) j[it.key()] = it.value();
  if (r.verdicts.size() > 1) {
    j["alternate"] = model_json(r.verdicts[1], timings, full_tree);
    j["models_agree"] = *r.models_agree;
  }
  return j;
}

Json to_json(const ClassificationReport& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  Json cfg;
  Json types = Json::array();
  for (const auto& t : r.config.types) types.push_back(t.str());
  cfg["types"] = std::move(types);
  cfg["model"] = to_string(r.config.model);
  cfg["samples"] = r.config.samples;
  cfg["seed"] = r.config.seed;
  if (r.config.chevalley.flip_extraspecial) cfg["flip_extraspecial"] = *r.config.chevalley.flip_extraspecial;
  else cfg["flip_extraspecial"] = nullptr;
  j["config"] = std::move(cfg);
  Json recs = Json::array();
  for (const auto& rec : r.records) recs.push_back(to_json(rec, r.config.timings));
  j["flags"] = std::move(recs);
  Json summary;
  summary["even_flags"] = r.even_flags;
  summary["acs_flags"] = r.acs_flags;
  summary["integrable_flags"] = r.integrable_flags;
  j["summary"] = std::move(summary);
  return j;
}

std::string to_text(const ClassificationReport& r) {
  std::ostringstream os;
  os << "schema_version " << kSchemaVersion << "\n";
  os << "seed " << r.config.seed << " samples " << r.config.samples << " model " << to_string(r.config.model) << "\n";
  for (const auto& rec : r.records) {
    const ModelVerdict& mv = rec.verdicts.front();
    os << "flag " << flag_name(rec.lie_type, rec.theta_text) << " | model " << to_string(mv.model) << " | dim "
       << mv.im.dim() << " | classes";
    for (const auto& c : mv.im.classes.classes) os << ' ' << c.roots.size() << (c.even() ? 'e' : 'o');
    os << " | acs " << to_string(mv.existence.status);
    if (mv.existence.obstruction) os << " (" << mv.existence.obstruction->kind << ")";
    os << " | integrability " << to_string(mv.verdict.status) << " | moduli " << mv.moduli_dimension;
    if (rec.verdicts.size() > 1)
      os << " | alternate " << to_string(rec.verdicts[1].model) << ' ' << to_string(rec.verdicts[1].verdict.status)
         << " | models_agree " << (*rec.models_agree ? "yes" : "no");
    if (r.config.timings)
      os << " | ms " << mv.t_build << '/' << mv.t_decompose << '/' << mv.t_nijenhuis;
    os << "\n";
  }
  auto list = [&](const char* name, const std::vector<std::string>& v) {
    os << name << " (" << v.size() << ")\n";
    for (const auto& s : v) os << "  " << s << "\n";
  };
  list("even_flags", r.even_flags);
  list("acs_flags", r.acs_flags);
  list("integrable_flags", r.integrable_flags);
  return os.str();
}

Json inspect_json(const FlagRecord& r) {
  Json j = to_json(r, true);
  auto extra = [](const ModelVerdict& mv) {
    const auto labels = labels_of(mv.im);
    Json e;
    Json basis = Json::array();
    for (const auto& b : mv.im.basis) {
      Json x;
      x["label"] = b.label;
      x["key_root"] = mv.im.sc->roots().format(mv.im.sc->roots().roots()[b.key_root]);
      x["scale"] = b.scale.str();
      x["m_class"] = b.m_class;
      basis.push_back(std::move(x));
    }
    e["basis_elements"] = std::move(basis);
    e["ktheta_generators"] = mv.im.ktheta_labels;
    if (mv.decomposition) {
      const Decomposition& d = *mv.decomposition;
      Json comps = Json::array();
      for (std::size_t k = 0; k < d.components.size(); ++k) {
        const auto& c = d.components[k];
        Json x;
        x["name"] = "V" + std::to_string(k + 1);
        x["dim"] = c.space.dim();
        x["endo_dim"] = c.endo_dim;
        x["equivalence_class"] = c.equivalence_class;
        x["cyclic_certified"] = c.cyclic_certified;
        Json span = Json::array();
        for (const auto& v : c.space.basis()) span.push_back(combination(v, labels));
        x["span"] = std::move(span);
        comps.push_back(std::move(x));
      }
      e["components"] = std::move(comps);
      Json weights = Json::array();
      for (const auto& w : d.inner_weights) weights.push_back(w.str());
      e["inner_weights"] = std::move(weights);
      Json comm = Json::array();
      for (const auto& m : d.comm.basis) {
        Json entries = Json::array();
        for (std::size_t a = 0; a < m.rows(); ++a)
          for (std::size_t b = 0; b < m.cols(); ++b)
            if (!m(a, b).is_zero()) entries.push_back({labels[a], labels[b], m(a, b).str()});
        comm.push_back(std::move(entries));
      }
      e["commutant_basis"] = std::move(comm);
    }
    const QMatrix* jm = nullptr;
    if (mv.verdict.j) jm = &*mv.verdict.j;
    else if (mv.existence.witness) jm = &mv.existence.witness->j;
    if (jm && jm->rows() > 0) {
      Json jcols = Json::array();
      for (std::size_t c = 0; c < jm->cols(); ++c) jcols.push_back({labels[c], combination(jm->column(c), labels)});
      e["j_action"] = std::move(jcols);
      NijenhuisTable nt = nijenhuis_table(mv.im, *jm);
      Json tab = Json::array();
      for (std::size_t a = 0; a < nt.n; ++a)
        for (std::size_t b = a + 1; b < nt.n; ++b)
          if (!is_zero(nt.at(a, b))) tab.push_back({labels[a], labels[b], combination(nt.at(a, b), labels)});
      e["nijenhuis_nonzero"] = std::move(tab);
      e["nijenhuis_zero"] = nt.is_zero();
    }
    return e;
  };
  j["inspect"] = extra(r.verdicts.front());
  if (r.verdicts.size() > 1) j["alternate"]["inspect"] = extra(r.verdicts[1]);
  return j;
}

std::string inspect_text(const FlagRecord& r) {
  Json j = inspect_json(r);
  std::ostringstream os;
  auto dump_model = [&](const Json& m, const Json& ins) {
    os << "model " << m["model"].get<std::string>() << ", module dimension " << m["module_dim"].get<std::size_t>()
       << "\n";
    os << "basis:";
    for (const auto& b : m["basis"]) os << ' ' << b.get<std::string>();
    os << "\nM-classes:\n";
    for (const auto& c : m["m_classes"]) {
      os << "  [" << c["parity"].get<std::string>() << "]";
      for (const auto& x : c["roots"]) os << ' ' << x.get<std::string>();
      os << "\n";
    }
    if (ins.contains("components")) {
      os << "decomposition:\n";
      for (const auto& c : ins["components"]) {
        os << "  " << c["name"].get<std::string>() << " (dim " << c["dim"].get<std::size_t>() << ", endo "
           << c["endo_dim"].get<std::size_t>() << ", class " << c["equivalence_class"].get<std::size_t>() << ") = <";
        bool first = true;
        for (const auto& s : c["span"]) {
          os << (first ? "" : ", ") << s.get<std::string>();
          first = false;
        }
        os << ">\n";
      }
      os << "commutant dimension " << ins["commutant_basis"].size() << "\n";
    }
    const Json& acs = m["acs"];
    os << "acs: " << acs["verdict"].get<std::string>();
    if (acs.contains("kind")) {
      os << " (" << acs["kind"].get<std::string>() << ", dim " << acs["dim"].get<std::size_t>() << ")\n";
      for (const auto& d : acs["derivation"]) os << "  " << d.get<std::string>() << "\n";
      os << "  span:";
      for (const auto& s : acs["span"]) os << ' ' << s.get<std::string>();
    } else if (acs.contains("construction")) {
      os << " (" << acs["construction"].get<std::string>() << ")";
    }
    os << "\n";
    const Json& in = m["integrability"];
    os << "integrability: " << in["verdict"].get<std::string>();
    if (in.contains("note")) os << " (" << in["note"].get<std::string>() << ")";
    os << "\n";
    if (in.contains("parameters")) {
      os << "  parameters:";
      for (const auto& p : in["parameters"]) os << ' ' << p.get<std::string>();
      os << "\n  case analysis: " << in["nodes"].get<std::size_t>() << " nodes";
      if (in.contains("case_tree_leaves")) os << ", " << in["case_tree_leaves"].get<std::size_t>() << " leaves";
      os << "\n";
    }
    if (in.contains("point")) {
      os << "  point:";
      for (auto it = in["point"].begin(); it != in["point"].end(); ++it)
        os << ' ' << it.key() << '=' << it.value().get<std::string>();
      os << "\n";
    }
    if (ins.contains("j_action")) {
      os << "J:\n";
      for (const auto& e : ins["j_action"])
        os << "  J(" << e[0].get<std::string>() << ") = " << e[1].get<std::string>() << "\n";
      os << "Nijenhuis: " << (ins["nijenhuis_zero"].get<bool>() ? "identically zero" : "nonzero") << "\n";
      for (const auto& e : ins["nijenhuis_nonzero"])
        os << "  N(" << e[0].get<std::string>() << ", " << e[1].get<std::string>() << ") = " << e[2].get<std::string>()
           << "\n";
    }
  };
  os << "flag " << j["id"].get<std::string>() << "\n";
  dump_model(j, j["inspect"]);
  if (j.contains("alternate")) {
    os << "\nalternate ";
    dump_model(j["alternate"], j["alternate"]["inspect"]);
    os << "models agree: " << (j["models_agree"].get<bool>() ? "yes" : "no") << "\n";
  }
  return os.str();
}

namespace {

void verify_model(const Json& m, const LieType& t, const std::vector<std::size_t>& theta, const RunConfig& cfg,
                  const std::string& id, std::vector<std::string>& failures) {
  auto fail = [&](const std::string& msg) { failures.push_back(id + " [" + m["model"].get<std::string>() + "]: " + msg); };
  ModuleModel model = parse_model(m["model"].get<std::string>());
  IsotropyModel im = build_isotropy(FlagSpec{t, theta, model, effective_chevalley(t, cfg.chevalley)});
  if (im.dim() != m["module_dim"].get<std::size_t>()) return fail("module dimension differs");
  if (labels_of(im) != m["basis"].get<std::vector<std::string>>()) return fail("basis labels differ");

  const Json& acs = m["acs"];
  const std::string av = acs["verdict"].get<std::string>();
  if (av == "witness") {
    QMatrix j = matrix_from_json(acs["j"]);
    if (j.rows() != im.dim() || j.cols() != im.dim()) return fail("witness has the wrong size");
    if (!ACSWitness{j, false, {}}.verify(im)) fail("witness fails J^2 = -I or commutation");
  } else if (av == "obstruction") {
    std::vector<QVector> vs;
    for (const auto& row : acs["basis"]) {
      QVector v;
      for (const auto& x : row) v.push_back(Rational::parse(x.get<std::string>()));
      if (v.size() != im.dim()) return fail("obstruction vector has the wrong size");
      vs.push_back(std::move(v));
    }
    Obstruction o{acs["kind"].get<std::string>(), Subspace(im.dim(), vs), acs["dim"].get<std::size_t>(), {}};
    if (o.subspace.dim() != o.dim) return fail("obstruction basis is dependent");
    if (!o.verify(im, commutant(im))) fail("obstruction subspace is even or not forced");
    if (o.kind == "odd_m_class") {
      bool match = false;
      for (std::size_t c = 0; c < im.classes.classes.size(); ++c) {
        std::vector<QVector> cv;
        for (std::size_t i : im.class_members(c)) {
          QVector v(im.dim());
          v[i] = 1;
          cv.push_back(v);
        }
        if (Subspace(im.dim(), cv) == o.subspace) match = true;
      }
      if (!match) fail("odd_m_class subspace is not an M-class");
    }
  } else {
    fail("acs verdict '" + av + "' carries no certificate");
  }

  const Json& in = m["integrability"];
  const std::string iv = in["verdict"].get<std::string>();
  if (iv == "integrable_witness") {
    if (!in.contains("j")) return fail("integrable verdict without J");
    QMatrix j = matrix_from_json(in["j"]);
    if (!ACSWitness{j, false, {}}.verify(im)) fail("integrable J is not an invariant almost complex structure");
    if (!nijenhuis_table(im, j).is_zero()) fail("Nijenhuis tensor of the integrable J is nonzero");
  } else if (iv == "not_integrable_certified" || iv == "not_integrable_sampled") {
    // Rerun the exact case analysis and require the same outcome.
    VerdictOptions vo;
    vo.seed = flag_seed(cfg.seed, t, theta);
    vo.samples = cfg.samples;
    IntegrabilityVerdict v = integrability_verdict(im, decompose(im, vo.seed), vo);
    if (to_string(v.status) != iv) fail("replayed verdict is " + to_string(v.status));
    else if (v.nodes != in["nodes"].get<std::size_t>()) fail("replayed case analysis has a different size");
  } else if (iv == "family_infeasible") {
    if (av != "obstruction") fail("family_infeasible without an obstruction");
  } else {
    fail("integrability verdict '" + iv + "'");
  }
}

}  // namespace

std::vector<std::string> verify_report(const Json& report) {
  std::vector<std::string> failures;
  if (!report.contains("schema_version") || report["schema_version"].get<int>() != kSchemaVersion) {
    failures.push_back("unsupported schema_version");
    return failures;
  }
  RunConfig cfg;
  const Json& c = report["config"];
  cfg.seed = c["seed"].get<std::uint64_t>();
  cfg.samples = c["samples"].get<std::size_t>();
  if (!c["flip_extraspecial"].is_null()) cfg.chevalley.flip_extraspecial = c["flip_extraspecial"].get<std::size_t>();

  std::vector<std::string> even_flags, acs_flags, integrable_flags;
  for (const auto& f : report["flags"]) {
    const std::string id = f["id"].get<std::string>();
    try {
      LieType t{f["family"].get<std::string>().at(0), f["rank"].get<int>()};
      t.validate();
      auto theta = f["theta_indices"].get<std::vector<std::size_t>>();
      RootSystem rs(t);
      if (parse_theta(rs, f["theta"].get<std::string>()) != theta) failures.push_back(id + ": theta text mismatch");
      verify_model(f, t, theta, cfg, id, failures);
      if (f.contains("alternate")) verify_model(f["alternate"], t, theta, cfg, id, failures);
      if (f["all_even"].get<bool>()) even_flags.push_back(id);
      if (f["acs"]["verdict"] == "witness") acs_flags.push_back(id);
      if (f["integrability"]["verdict"] == "integrable_witness") integrable_flags.push_back(id);
    } catch (const std::exception& e) {
      failures.push_back(id + ": " + e.what());
    }
  }
  const Json& s = report["summary"];
  if (s["even_flags"].get<std::vector<std::string>>() != even_flags)
    failures.push_back("summary even_flags disagrees with records");
  if (s["acs_flags"].get<std::vector<std::string>>() != acs_flags)
    failures.push_back("summary acs_flags disagrees with records");
  if (s["integrable_flags"].get<std::vector<std::string>>() != integrable_flags)
    failures.push_back("summary integrable_flags disagrees with records");
  return failures;
}

}  // namespace flagacs
