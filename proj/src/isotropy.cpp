#include "flagacs/isotropy.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace flagacs {

std::string to_string(ModuleModel m) {
  switch (m) {
    case ModuleModel::n_minus: return "n_minus";
    case ModuleModel::n_plus: return "n_plus";
    case ModuleModel::m_theta: return "m_theta";
  }
  return "?";
}

ModuleModel parse_model(const std::string& s) {
  if (s == "n_minus") return ModuleModel::n_minus;
  if (s == "n_plus") return ModuleModel::n_plus;
  if (s == "m_theta") return ModuleModel::m_theta;
  throw std::invalid_argument("unknown model '" + s + "'");
}

MCharacter m_character(const RootSystem& rs, const Root& a) {
  MCharacter chi(rs.rank());
  for (std::size_t i = 0; i < rs.rank(); ++i) chi[i] = ((rs.pairing(a, rs.simple()[i]) % 2) + 2) % 2;
  return chi;
}

bool MClassPartition::all_even() const {
  return std::all_of(classes.begin(), classes.end(), [](const MClass& c) { return c.even(); });
}

MClassPartition m_classes(const RootSystem& rs, const ThetaSet& theta) {
  std::map<MCharacter, MClass> by_chi;
  for (const auto& r : theta.complement_minus) {
    MCharacter chi = m_character(rs, r);
    auto& c = by_chi[chi];
    c.chi = chi;
    c.roots.push_back(r);
  }
  MClassPartition p;
  for (auto& [chi, c] : by_chi) p.classes.push_back(std::move(c));
  std::sort(p.classes.begin(), p.classes.end(), [](const MClass& a, const MClass& b) {
    return *std::min_element(a.roots.begin(), a.roots.end()) < *std::min_element(b.roots.begin(), b.roots.end());
  });
  return p;
}

MClassPartition m_classes(const FlagSpec& fs) {
  RootSystem rs(fs.lie_type);
  return m_classes(rs, theta_closure(rs, fs.theta));
}

std::vector<ThetaSet> m_parity_filter(const LieType& t) {
  t.validate();
  if (t.rank > 12) throw std::invalid_argument("m_parity_filter: rank guard exceeded (max 12)");
  RootSystem rs(t);
  std::vector<ThetaSet> out;
  const std::size_t r = rs.rank();
  for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << r); ++mask) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < r; ++i)
      if ((mask >> i) & 1) members.push_back(i);
    ThetaSet th = theta_closure(rs, members);
    if (m_classes(rs, th).all_even()) out.push_back(std::move(th));
  }
  std::sort(out.begin(), out.end(), [](const ThetaSet& a, const ThetaSet& b) { return a.members < b.members; });
  return out;
}

namespace {

std::set<std::set<Root>> as_sets(const std::vector<std::vector<Root>>& parts) {
  std::set<std::set<Root>> s;
  for (const auto& p : parts) s.insert(std::set<Root>(p.begin(), p.end()));
  return s;
}

}  // namespace

bool m_matrix_crosscheck(const FlagSpec& fs) {
  RootSystem rs(fs.lie_type);
  ThetaSet th = theta_closure(rs, fs.theta);
  auto group = matrix_m_elements(fs.lie_type);
  std::map<std::vector<int>, std::vector<Root>> by_sig;
  for (const auto& r : th.complement_minus) {
    QMatrix p = standard_matrix(rs, r);
    std::size_t row = 0, col = 0;
    bool found = false;
    for (std::size_t i = 0; i < p.rows() && !found; ++i)
      for (std::size_t j = 0; j < p.cols() && !found; ++j)
        if (!p(i, j).is_zero()) {
          row = i;
          col = j;
          found = true;
        }
    std::vector<int> sig;
    for (const auto& d : group) {
      // Every nonzero entry of the root vector must scale by the same sign.
      int s = d[row] * d[col];
      for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j)
          if (!p(i, j).is_zero() && d[i] * d[j] != s) return false;
      sig.push_back(s);
    }
    by_sig[sig].push_back(r);
  }
  std::vector<std::vector<Root>> matrix_parts, chi_parts;
  for (auto& [sig, roots] : by_sig) matrix_parts.push_back(roots);
  for (const auto& c : m_classes(rs, th).classes) chi_parts.push_back(c.roots);
  return as_sets(matrix_parts) == as_sets(chi_parts);
}

// ---------------------------------------------------------------------------

QVector IsotropyModel::project(const AbstractElement& e, bool* residual) const {
  QVector v(dim());
  bool res = !flagacs::is_zero(e.h);
  const std::size_t np = sc->num_roots() / 2;
  for (const auto& [k, c] : e.x) {
    long slot = root_slot[k];
    if (slot >= 0) {
      v[static_cast<std::size_t>(slot)] = c / basis[static_cast<std::size_t>(slot)].scale;
      continue;
    }
    if (spec.model == ModuleModel::m_theta && k >= np && root_slot[k - np] >= 0) continue;
    res = true;
  }
  if (residual) *residual = res;
  return v;
}

std::vector<std::size_t> IsotropyModel::class_members(std::size_t c) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim(); ++i)
    if (basis[i].m_class == c) out.push_back(i);
  return out;
}

std::optional<std::size_t> IsotropyModel::index_of_root(std::size_t root_index) const {
  if (root_index >= root_slot.size() || root_slot[root_index] < 0) return std::nullopt;
  return static_cast<std::size_t>(root_slot[root_index]);
}

namespace {

std::string n_label(const RootSystem& rs, const Root& r) {
  char kind = 'X';
  char fam = rs.type().family;
  if (fam == 'B' || fam == 'D') {
    std::vector<int> nz;
    for (int c : r)
      if (c != 0) nz.push_back(c);
    if (nz.size() == 2 && nz[0] * nz[1] > 0) kind = 'Y';
  }
  return std::string(1, kind) + "[" + rs.format(r) + "]";
}

void fill_tables(IsotropyModel& im) {
  const std::size_t n = im.dim();
  const auto& sc = *im.sc;
  im.root_slot.assign(sc.num_roots(), -1);
  for (std::size_t i = 0; i < n; ++i) im.root_slot[im.basis[i].key_root] = static_cast<long>(i);

  im.m_gens.clear();
  for (std::size_t g = 0; g < sc.rank(); ++g) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = sc.cartan(im.basis[i].key_root, g) % 2 == 0 ? 1 : -1;
    im.m_gens.push_back(m);
  }

  im.ktheta_gens.clear();
  im.ktheta_labels.clear();
  im.action_residual_zero = true;
  for (const auto& t : im.theta.closure_plus) {
    AbstractElement a = sc.compact(t);
    QMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      bool res = false;
      QVector col = im.project(sc.bracket(a, im.basis[j].element), &res);
      if (res) im.action_residual_zero = false;
      for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
    }
    im.ktheta_gens.push_back(m);
    im.ktheta_labels.push_back("A[" + sc.roots().format(t) + "]");
  }

  im.bracket_table.assign(n * n, SparseVec{});
  im.bracket_residual_zero = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      bool res = false;
      QVector v = im.project(sc.bracket(im.basis[i].element, im.basis[j].element), &res);
      if (res) im.bracket_residual_zero = false;
      SparseVec s, t;
      for (std::size_t k = 0; k < n; ++k)
        if (!v[k].is_zero()) {
          s[k] = v[k];
          t[k] = -v[k];
        }
      im.bracket_table[i * n + j] = std::move(s);
      im.bracket_table[j * n + i] = std::move(t);
    }
}

}  // namespace

namespace {

struct AlgebraData {
  std::shared_ptr<const StructureConstants> sc;
  std::optional<MatrixRealization> mr;
};

// Constants and realization depend only on the type and sign option.
const AlgebraData& algebra_data(const LieType& t, const ChevalleyOptions& opts) {
  static std::mutex mu;
  static std::map<std::pair<LieType, std::optional<std::size_t>>, std::shared_ptr<const AlgebraData>> cache;
  const auto key = std::make_pair(t, opts.flip_extraspecial);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  auto d = std::make_shared<AlgebraData>();
  d->sc = std::make_shared<const StructureConstants>(RootSystem(t), opts);
  if (t.family != 'G') d->mr = build_realization(*d->sc);
  return *cache.emplace(key, std::move(d)).first->second;
}

}  // namespace

IsotropyModel build_isotropy(const FlagSpec& fs) {
  fs.lie_type.validate();
  if (fs.model == ModuleModel::m_theta && fs.lie_type.family != 'C' && fs.lie_type.family != 'D')
    throw std::invalid_argument("m_theta model is only available for types C and D");
  IsotropyModel im;
  im.spec = fs;
  const AlgebraData& data = algebra_data(fs.lie_type, fs.chevalley);
  im.sc = data.sc;
  const auto& sc = *im.sc;
  im.theta = theta_closure(sc.roots(), fs.theta);
  im.spec.theta = im.theta.members;
  im.classes = m_classes(sc.roots(), im.theta);

  const std::optional<MatrixRealization>& mr = data.mr;

  for (std::size_t c = 0; c < im.classes.classes.size(); ++c) {
    std::vector<Root> roots = im.classes.classes[c].roots;
    std::sort(roots.begin(), roots.end(), [&](const Root& a, const Root& b) {
      return *sc.roots().index(a) < *sc.roots().index(b);
    });
    for (const auto& neg : roots) {
      ModuleBasisElement b;
      b.m_class = c;
      Root key = fs.model == ModuleModel::n_minus ? neg : negate(neg);
      b.key_root = *sc.roots().index(key);
      if (fs.model == ModuleModel::m_theta) {
        AbstractElement a = sc.compact(key);
        b.scale = 1;
        b.label = "A[" + sc.roots().format(key) + "]";
        if (fs.lie_type.family == 'C') {
          auto img = u_l_image(mr->embed(a));
          if (img.size() != 1) throw std::logic_error("build_isotropy: compact element is not a single u(l) basis vector");
          b.label = img.begin()->first;
          b.scale = img.begin()->second.inverse();
        }
        b.element = b.scale * a;
      } else {
        b.scale = mr ? mr->kappa[b.key_root].inverse() : Rational(1);
        b.element = sc.x(b.key_root, b.scale);
        b.label = n_label(sc.roots(), key);
      }
      im.basis.push_back(std::move(b));
    }
  }
  fill_tables(im);
  return im;
}

IsotropyModel permute_basis(const IsotropyModel& im, const std::vector<std::size_t>& perm) {
  if (perm.size() != im.dim()) throw std::invalid_argument("permute_basis: wrong permutation size");
  IsotropyModel out = im;
  out.basis.clear();
  for (std::size_t i : perm) out.basis.push_back(im.basis.at(i));
  fill_tables(out);
  return out;
}

}  // namespace flagacs
