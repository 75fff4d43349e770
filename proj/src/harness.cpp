#include "preserverlab/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <utility>

#include "preserverlab/rng.hpp"

namespace plab {

namespace {

constexpr std::uint64_t kTagStretch = 0x73747265746368ULL;
constexpr std::uint64_t kTagLeft = 0x6c656674ULL;
constexpr std::uint64_t kTagRight = 0x7269676874ULL;
constexpr std::uint64_t kTagSign = 0x7369676eULL;
constexpr std::uint64_t kTagUnitary = 0x756e6974ULL;
constexpr std::uint64_t kTagTau = 0x746175ULL;

double unit_from_hash(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

std::uint64_t hash_vector(const RVector& v, std::uint64_t seed) {
  std::uint64_t h = splitmix64(seed) ^ 0xcbf29ce484222325ULL;
  for (Eigen::Index i = 0; i < v.size(); ++i) h = fnv1a64_double(v(i), h);
  return splitmix64(h);
}

std::uint64_t hash_matrix(const CMatrix& a, std::uint64_t seed) {
  std::uint64_t h = splitmix64(seed) ^ 0xcbf29ce484222325ULL;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      h = fnv1a64_double(a(i, j).real(), h);
      h = fnv1a64_double(a(i, j).imag(), h);
    }
  return splitmix64(h);
}

int sign_from_hash(std::uint64_t h) { return unit_from_hash(h) < 0.5 ? -1 : 1; }

double real_from_hash(std::uint64_t h) { return 4.0 * unit_from_hash(h) - 2.0; }

void validate_sign_rule(const Rule& rule, const std::string& path) {
  switch (rule.kind) {
    case Rule::Kind::Constant:
      if (rule.value != 1.0 && rule.value != -1.0)
        throw SpecError(path + ": constant sign rule must be +1 or -1");
      return;
    case Rule::Kind::Trace:
      throw SpecError(path + ": trace is real-valued and cannot serve as a sign rule");
    case Rule::Kind::SeededHash:
      return;
  }
}

void require_unitary_data(const CMatrix& u, int d, const std::string& path) {
  if (u.rows() != d || u.cols() != d)
    throw SpecError(path + ": expected a " + std::to_string(d) + "x" +
                    std::to_string(d) + " matrix");
  const double defect = (u.adjoint() * u - CMatrix::Identity(d, d)).norm();
  if (defect > 1e-8)
    throw SpecError(path + ": matrix is not unitary, defect " + std::to_string(defect));
}

void require_projection_input(const CMatrix& p) {
  const double tol = 1e-8;
  if (!is_hermitian(p, tol)) throw StructureError("input is not Hermitian");
  if ((p * p - p).norm() > tol * std::max(1.0, p.norm()))
    throw StructureError("input is not idempotent");
  if (std::abs(p.trace().real() - 1.0) > tol)
    throw StructureError("input does not have trace 1");
}

RMatrix scale_top_singular_value(const RMatrix& m, double factor) {
  Eigen::JacobiSVD<RMatrix> fit(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RVector s = fit.singularValues();
  s(0) *= factor;
  return fit.matrixU() * s.asDiagonal() * fit.matrixV().transpose();
}

CMatrix scale_top_singular_value(const CMatrix& m, double factor) {
  Eigen::JacobiSVD<CMatrix> fit(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RVector s = fit.singularValues();
  s(0) *= factor;
  return fit.matrixU() * s.asDiagonal() * fit.matrixV().adjoint();
}

BlackBoxMap::VecFn signed_linear_eval(RMatrix matrix, Rule sign_rule) {
  return [matrix = std::move(matrix), sign_rule](const RVector& v) -> RVector {
    return static_cast<double>(sign_rule.sign_at(v)) * (matrix * v);
  };
}

BlackBoxMap::MatFn conjugation_eval(CMatrix u, bool antiunitary, Rule tau_rule,
                                    Rule f_rule) {
  return [u = std::move(u), antiunitary, tau_rule, f_rule](const CMatrix& a) -> CMatrix {
    const CMatrix ap = antiunitary ? CMatrix(a.conjugate()) : a;
    const double tau = tau_rule.sign_at(a);
    const double f = f_rule.real_at(a);
    return tau * (u * ap * u.adjoint()) +
           f * CMatrix::Identity(a.rows(), a.cols());
  };
}

BlackBoxMap::MatFn projection_eval(CMatrix u, bool antiunitary) {
  return [u = std::move(u), antiunitary](const CMatrix& p) -> CMatrix {
    require_projection_input(p);
    const CMatrix pp = antiunitary ? CMatrix(p.conjugate()) : p;
    return u * pp * u.adjoint();
  };
}

bool table_match(const TableEntry& entry, const RVector& v) {
  const auto* in = std::get_if<RVector>(&entry.input);
  if (!in || in->size() != v.size()) return false;
  return (*in - v).cwiseAbs().maxCoeff() <= 1e-12;
}

bool table_match(const TableEntry& entry, const CMatrix& a) {
  const auto* in = std::get_if<CMatrix>(&entry.input);
  if (!in || in->rows() != a.rows() || in->cols() != a.cols()) return false;
  return (*in - a).cwiseAbs().maxCoeff() <= 1e-12;
}

BlackBoxMap build_family(const Space& space,
                         const decltype(MapSpec::family)& family,
                         bool validate_unitary);

BlackBoxMap build_corrupted(const Space& space, const CorruptedFamily& fam) {
  if (!fam.base) throw SpecError("family.base: missing base map");
  if (!(fam.base->space == space))
    throw SpecError("family.base: base map lives on a different space");
  if (fam.magnitude < 0.0) throw SpecError("family.magnitude: must be nonnegative");

  if (fam.corruption == "scale_singular_value") {
    const double factor = 1.0 + fam.magnitude;
    auto scaled = fam.base->family;
    if (auto* lin = std::get_if<SignedLinearFamily>(&scaled)) {
      lin->matrix = scale_top_singular_value(lin->matrix, factor);
    } else if (auto* conj = std::get_if<ConjugationAffineFamily>(&scaled)) {
      conj->unitary = scale_top_singular_value(conj->unitary, factor);
    } else if (auto* proj = std::get_if<ProjectionMapFamily>(&scaled)) {
      proj->unitary = scale_top_singular_value(proj->unitary, factor);
    } else {
      throw SpecError("family.corruption: scale_singular_value needs linear family data");
    }
    return build_family(space, scaled, false);
  }

  if (fam.corruption == "nonscalar_offset") {
    if (space.kind != SpaceKind::Hermitian)
      throw SpecError("family.corruption: nonscalar_offset applies to Hermitian spaces");
    BlackBoxMap base = build_family(space, fam.base->family, true);
    const double mag = fam.magnitude;
    const int d = space.dim;
    return BlackBoxMap::hermitian(d, [base, mag, d](const CMatrix& a) -> CMatrix {
      CMatrix out = base(a);
      out(0, 0) += mag;
      return out;
    });
  }

  if (fam.corruption == "noise") {
    BlackBoxMap base = build_family(space, fam.base->family, true);
    const double mag = fam.magnitude;
    const std::uint64_t seed = fam.seed;
    const int d = space.dim;
    if (space.kind == SpaceKind::RealEuclidean) {
      return BlackBoxMap::euclidean(d, [base, mag, seed, d](const RVector& v) -> RVector {
        Rng rng(hash_vector(v, seed));
        return base(v) + mag * rng.gaussian_vector(d);
      });
    }
    return BlackBoxMap::hermitian(d, [base, mag, seed, d](const CMatrix& a) -> CMatrix {
      Rng rng(hash_matrix(a, seed));
      return base(a) + mag * rng.gaussian_hermitian(d);
    });
  }

  throw SpecError("family.corruption: unknown kind '" + fam.corruption + "'");
}

BlackBoxMap build_family(const Space& space,
                         const decltype(MapSpec::family)& family,
                         bool validate_unitary) {
  const int d = space.dim;
  if (const auto* lin = std::get_if<SignedLinearFamily>(&family)) {
    if (space.kind != SpaceKind::RealEuclidean)
      throw SpecError("family.kind: signed_linear requires a real_euclidean space");
    if (lin->matrix.rows() != d || lin->matrix.cols() != d)
      throw SpecError("family.matrix: expected " + std::to_string(d) + "x" +
                      std::to_string(d));
    validate_sign_rule(lin->sign_rule, "family.sign_rule");
    return BlackBoxMap::euclidean(d, signed_linear_eval(lin->matrix, lin->sign_rule));
  }
  if (const auto* conj = std::get_if<ConjugationAffineFamily>(&family)) {
    if (space.kind != SpaceKind::Hermitian)
      throw SpecError("family.kind: conjugation_affine requires a hermitian space");
    if (validate_unitary) require_unitary_data(conj->unitary, d, "family.unitary");
    validate_sign_rule(conj->tau_rule, "family.tau_rule");
    return BlackBoxMap::hermitian(
        d, conjugation_eval(conj->unitary, conj->antiunitary, conj->tau_rule,
                            conj->f_rule));
  }
  if (const auto* proj = std::get_if<ProjectionMapFamily>(&family)) {
    if (space.kind != SpaceKind::Hermitian)
      throw SpecError("family.kind: projection_map requires a hermitian space");
    if (validate_unitary) require_unitary_data(proj->unitary, d, "family.unitary");
    return BlackBoxMap::hermitian(d, projection_eval(proj->unitary, proj->antiunitary));
  }
  if (const auto* table = std::get_if<TableFamily>(&family)) {
    for (std::size_t i = 0; i < table->entries.size(); ++i) {
      const TableEntry& e = table->entries[i];
      const bool vec_in = std::holds_alternative<RVector>(e.input);
      const bool vec_out = std::holds_alternative<RVector>(e.output);
      if (vec_in != (space.kind == SpaceKind::RealEuclidean) || vec_in != vec_out)
        throw SpecError("family.entries[" + std::to_string(i) +
                        "]: entry kind does not match the space");
    }
    auto entries = std::make_shared<std::vector<TableEntry>>(table->entries);
    if (space.kind == SpaceKind::RealEuclidean) {
      return BlackBoxMap::euclidean(d, [entries](const RVector& v) -> RVector {
        for (const TableEntry& e : *entries)
          if (table_match(e, v)) return std::get<RVector>(e.output);
        throw MissingSample("table has no entry for the queried vector");
      });
    }
    return BlackBoxMap::hermitian(d, [entries](const CMatrix& a) -> CMatrix {
      for (const TableEntry& e : *entries)
        if (table_match(e, a)) return std::get<CMatrix>(e.output);
      throw MissingSample("table has no entry for the queried matrix");
    });
  }
  if (const auto* corr = std::get_if<CorruptedFamily>(&family))
    return build_corrupted(space, *corr);
  throw InternalError("unreachable family variant");
}

}  // namespace

double Rule::real_at(const RVector& v) const {
  switch (kind) {
    case Kind::Constant:
      return value;
    case Kind::Trace:
      throw InternalError("trace rule evaluated on a vector");
    case Kind::SeededHash:
      return real_from_hash(hash_vector(v, seed));
  }
  throw InternalError("unreachable rule kind");
}

double Rule::real_at(const CMatrix& a) const {
  switch (kind) {
    case Kind::Constant:
      return value;
    case Kind::Trace:
      return a.trace().real();
    case Kind::SeededHash:
      return real_from_hash(hash_matrix(a, seed));
  }
  throw InternalError("unreachable rule kind");
}

int Rule::sign_at(const RVector& v) const {
  switch (kind) {
    case Kind::Constant:
      return value < 0.0 ? -1 : 1;
    case Kind::Trace:
      throw InternalError("trace rule evaluated as a sign");
    case Kind::SeededHash:
      return sign_from_hash(hash_vector(v, seed));
  }
  throw InternalError("unreachable rule kind");
}

int Rule::sign_at(const CMatrix& a) const {
  switch (kind) {
    case Kind::Constant:
      return value < 0.0 ? -1 : 1;
    case Kind::Trace:
      throw InternalError("trace rule evaluated as a sign");
    case Kind::SeededHash:
      return sign_from_hash(hash_matrix(a, seed));
  }
  throw InternalError("unreachable rule kind");
}

RMatrix haar_orthogonal(int d, std::uint64_t seed) {
  if (d < kMinDim || d > kMaxDim)
    throw ParameterError("haar_orthogonal supports 2 <= d <= 8");
  Rng rng(seed);
  const RMatrix g = rng.gaussian_matrix(d);
  Eigen::HouseholderQR<RMatrix> qr(g);
  RMatrix q = qr.householderQ();
  const RMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i)
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  return q;
}

CMatrix haar_unitary(int d, std::uint64_t seed) {
  if (d < kMinDim || d > kMaxDim)
    throw ParameterError("haar_unitary supports 2 <= d <= 8");
  Rng rng(seed);
  const CMatrix g = rng.gaussian_complex_matrix(d);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    const Complex rii = r(i, i);
    const double mod = std::abs(rii);
    q.col(i) *= mod > 0.0 ? rii / mod : Complex(1.0, 0.0);
  }
  return q;
}

BlackBoxMap make_map(const MapSpec& spec) {
  if (spec.space.dim < kMinDim || spec.space.dim > kMaxDim)
    throw SpecError("space.dim: outside the supported range [2, 8]");
  return build_family(spec.space, spec.family, true);
}

MapSpec make_area_preserver(int d, std::uint64_t seed) {
  MapSpec spec;
  spec.space = Space{SpaceKind::RealEuclidean, d};
  RMatrix a;
  if (d == 2) {
    Rng rng(splitmix64(seed ^ kTagStretch));
    const double c = 1.0 + 1.5 * rng.uniform01();
    RMatrix stretch = RMatrix::Zero(2, 2);
    stretch(0, 0) = c;
    stretch(1, 1) = 1.0 / c;
    a = haar_orthogonal(2, splitmix64(seed ^ kTagLeft)) * stretch *
        haar_orthogonal(2, splitmix64(seed ^ kTagRight));
  } else {
    a = haar_orthogonal(d, splitmix64(seed ^ kTagLeft));
  }
  spec.family =
      SignedLinearFamily{std::move(a), Rule::seeded_hash(splitmix64(seed ^ kTagSign))};
  return spec;
}

MapSpec make_comm_preserver(int d, std::uint64_t seed, bool antiunitary) {
  MapSpec spec;
  spec.space = Space{SpaceKind::Hermitian, d};
  spec.family = ConjugationAffineFamily{haar_unitary(d, splitmix64(seed ^ kTagUnitary)),
                                        antiunitary,
                                        Rule::seeded_hash(splitmix64(seed ^ kTagTau)),
                                        Rule::trace()};
  return spec;
}

MapSpec make_projection_map(int d, std::uint64_t seed, bool antiunitary) {
  MapSpec spec;
  spec.space = Space{SpaceKind::Hermitian, d};
  spec.family = ProjectionMapFamily{haar_unitary(d, splitmix64(seed ^ kTagUnitary)),
                                    antiunitary};
  return spec;
}

MapSpec corrupt(const MapSpec& base, std::string_view corruption, double magnitude,
                std::uint64_t seed) {
  MapSpec spec;
  spec.space = base.space;
  spec.family = CorruptedFamily{std::make_shared<MapSpec>(base), std::string(corruption),
                                magnitude, seed};
  return spec;
}

nlohmann::json real_vector_to_json(const RVector& v) {
  nlohmann::json j = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v(i));
  return j;
}

nlohmann::json real_matrix_to_json(const RMatrix& m) {
  nlohmann::json j = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    j.push_back(std::move(row));
  }
  return j;
}

nlohmann::json complex_matrix_to_json(const CMatrix& m) {
  nlohmann::json j = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      row.push_back(nlohmann::json::array({m(i, k).real(), m(i, k).imag()}));
    j.push_back(std::move(row));
  }
  return j;
}

namespace {

const nlohmann::json& need(const nlohmann::json& j, const char* key,
                           const std::string& path) {
  if (!j.is_object() || !j.contains(key))
    throw SpecError(path + ": missing field '" + key + "'");
  return j.at(key);
}

double need_number(const nlohmann::json& j, const char* key, const std::string& path) {
  const nlohmann::json& v = need(j, key, path);
  if (!v.is_number()) throw SpecError(path + "." + key + ": expected a number");
  return v.get<double>();
}

std::uint64_t need_u64(const nlohmann::json& j, const char* key,
                       const std::string& path) {
  const nlohmann::json& v = need(j, key, path);
  if (!v.is_number_unsigned() && !v.is_number_integer())
    throw SpecError(path + "." + key + ": expected an integer");
  return v.get<std::uint64_t>();
}

std::string need_string(const nlohmann::json& j, const char* key,
                        const std::string& path) {
  const nlohmann::json& v = need(j, key, path);
  if (!v.is_string()) throw SpecError(path + "." + key + ": expected a string");
  return v.get<std::string>();
}

bool need_bool(const nlohmann::json& j, const char* key, const std::string& path) {
  const nlohmann::json& v = need(j, key, path);
  if (!v.is_boolean()) throw SpecError(path + "." + key + ": expected a boolean");
  return v.get<bool>();
}

}  // namespace

RVector real_vector_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw SpecError("expected a nonempty array of numbers");
  RVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw SpecError("expected a number at index " + std::to_string(i));
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

RMatrix real_matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw SpecError("expected a nonempty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  RMatrix m;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array()) throw SpecError("expected row " + std::to_string(i) + " to be an array");
    if (i == 0) {
      cols = j[i].size();
      m.resize(rows, cols);
    }
    if (j[i].size() != cols) throw SpecError("ragged matrix rows");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number()) throw SpecError("expected a number in the matrix");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = j[i][k].get<double>();
    }
  }
  return m;
}

CMatrix complex_matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw SpecError("expected a nonempty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  CMatrix m;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array()) throw SpecError("expected row " + std::to_string(i) + " to be an array");
    if (i == 0) {
      cols = j[i].size();
      m.resize(rows, cols);
    }
    if (j[i].size() != cols) throw SpecError("ragged matrix rows");
    for (std::size_t k = 0; k < cols; ++k) {
      const nlohmann::json& e = j[i][k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw SpecError("complex entries must be [re, im] pairs");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

namespace {

nlohmann::json rule_to_json(const Rule& rule) {
  switch (rule.kind) {
    case Rule::Kind::Constant:
      return {{"kind", "constant"}, {"value", rule.value}};
    case Rule::Kind::Trace:
      return {{"kind", "trace"}};
    case Rule::Kind::SeededHash:
      return {{"kind", "seeded_hash"}, {"seed", rule.seed}};
  }
  throw InternalError("unreachable rule kind");
}

Rule rule_from_json(const nlohmann::json& j, const std::string& path) {
  const std::string kind = need_string(j, "kind", path);
  if (kind == "constant") return Rule::constant(need_number(j, "value", path));
  if (kind == "trace") return Rule::trace();
  if (kind == "seeded_hash") return Rule::seeded_hash(need_u64(j, "seed", path));
  throw SpecError(path + ".kind: unknown rule '" + kind + "'");
}

nlohmann::json point_to_json(const std::variant<RVector, CMatrix>& point) {
  if (const auto* v = std::get_if<RVector>(&point))
    return {{"vector", real_vector_to_json(*v)}};
  return {{"matrix", complex_matrix_to_json(std::get<CMatrix>(point))}};
}

std::variant<RVector, CMatrix> point_from_json(const nlohmann::json& j,
                                               const Space& space,
                                               const std::string& path) {
  if (space.kind == SpaceKind::RealEuclidean) {
    try {
      return real_vector_from_json(j);
    } catch (const SpecError& e) {
      throw SpecError(path + ": " + e.what());
    }
  }
  try {
    return complex_matrix_from_json(j);
  } catch (const SpecError& e) {
    throw SpecError(path + ": " + e.what());
  }
}

}  // namespace

nlohmann::json to_json(const MapSpec& spec) {
  nlohmann::json j;
  j["space"] = {
      {"kind", spec.space.kind == SpaceKind::RealEuclidean ? "real_euclidean" : "hermitian"},
      {"dim", spec.space.dim}};
  nlohmann::json fam;
  if (const auto* lin = std::get_if<SignedLinearFamily>(&spec.family)) {
    fam["kind"] = "signed_linear";
    fam["matrix"] = real_matrix_to_json(lin->matrix);
    fam["sign_rule"] = rule_to_json(lin->sign_rule);
  } else if (const auto* conj = std::get_if<ConjugationAffineFamily>(&spec.family)) {
    fam["kind"] = "conjugation_affine";
    fam["unitary"] = complex_matrix_to_json(conj->unitary);
    fam["antiunitary"] = conj->antiunitary;
    fam["tau_rule"] = rule_to_json(conj->tau_rule);
    fam["f_rule"] = rule_to_json(conj->f_rule);
  } else if (const auto* proj = std::get_if<ProjectionMapFamily>(&spec.family)) {
    fam["kind"] = "projection_map";
    fam["unitary"] = complex_matrix_to_json(proj->unitary);
    fam["antiunitary"] = proj->antiunitary;
  } else if (const auto* table = std::get_if<TableFamily>(&spec.family)) {
    fam["kind"] = "table";
    auto raw = [](const std::variant<RVector, CMatrix>& p) -> nlohmann::json {
      if (const auto* v = std::get_if<RVector>(&p)) return real_vector_to_json(*v);
      return complex_matrix_to_json(std::get<CMatrix>(p));
    };
    nlohmann::json entries = nlohmann::json::array();
    for (const TableEntry& e : table->entries)
      entries.push_back({{"input", raw(e.input)}, {"output", raw(e.output)}});
    fam["entries"] = std::move(entries);
  } else if (const auto* corr = std::get_if<CorruptedFamily>(&spec.family)) {
    fam["kind"] = "corrupted";
    fam["base"] = to_json(*corr->base);
    fam["corruption"] = corr->corruption;
    fam["magnitude"] = corr->magnitude;
    fam["seed"] = corr->seed;
  }
  j["family"] = std::move(fam);
  return j;
}

MapSpec mapspec_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw SpecError("document root must be an object");
  const nlohmann::json& jspace = need(doc, "space", "document");
  const std::string kind = need_string(jspace, "kind", "space");
  MapSpec spec;
  if (kind == "real_euclidean")
    spec.space.kind = SpaceKind::RealEuclidean;
  else if (kind == "hermitian")
    spec.space.kind = SpaceKind::Hermitian;
  else
    throw SpecError("space.kind: unknown space '" + kind + "'");
  const double dim = need_number(jspace, "dim", "space");
  spec.space.dim = static_cast<int>(dim);
  if (spec.space.dim != dim || spec.space.dim < kMinDim || spec.space.dim > kMaxDim)
    throw SpecError("space.dim: expected an integer in [2, 8]");

  const nlohmann::json& jfam = need(doc, "family", "document");
  const std::string fkind = need_string(jfam, "kind", "family");
  if (fkind == "signed_linear") {
    SignedLinearFamily fam;
    try {
      fam.matrix = real_matrix_from_json(need(jfam, "matrix", "family"));
    } catch (const SpecError& e) {
      throw SpecError(std::string("family.matrix: ") + e.what());
    }
    fam.sign_rule = rule_from_json(need(jfam, "sign_rule", "family"), "family.sign_rule");
    spec.family = std::move(fam);
  } else if (fkind == "conjugation_affine") {
    ConjugationAffineFamily fam;
    try {
      fam.unitary = complex_matrix_from_json(need(jfam, "unitary", "family"));
    } catch (const SpecError& e) {
      throw SpecError(std::string("family.unitary: ") + e.what());
    }
    fam.antiunitary = need_bool(jfam, "antiunitary", "family");
    fam.tau_rule = rule_from_json(need(jfam, "tau_rule", "family"), "family.tau_rule");
    fam.f_rule = rule_from_json(need(jfam, "f_rule", "family"), "family.f_rule");
    spec.family = std::move(fam);
  } else if (fkind == "projection_map") {
    ProjectionMapFamily fam;
    try {
      fam.unitary = complex_matrix_from_json(need(jfam, "unitary", "family"));
    } catch (const SpecError& e) {
      throw SpecError(std::string("family.unitary: ") + e.what());
    }
    fam.antiunitary = need_bool(jfam, "antiunitary", "family");
    spec.family = std::move(fam);
  } else if (fkind == "table") {
    TableFamily fam;
    const nlohmann::json& jentries = need(jfam, "entries", "family");
    if (!jentries.is_array()) throw SpecError("family.entries: expected an array");
    for (std::size_t i = 0; i < jentries.size(); ++i) {
      const std::string path = "family.entries[" + std::to_string(i) + "]";
      TableEntry entry;
      entry.input = point_from_json(need(jentries[i], "input", path), spec.space,
                                    path + ".input");
      entry.output = point_from_json(need(jentries[i], "output", path), spec.space,
                                     path + ".output");
      fam.entries.push_back(std::move(entry));
    }
    spec.family = std::move(fam);
  } else if (fkind == "corrupted") {
    CorruptedFamily fam;
    fam.base = std::make_shared<MapSpec>(mapspec_from_json(need(jfam, "base", "family")));
    fam.corruption = need_string(jfam, "corruption", "family");
    fam.magnitude = need_number(jfam, "magnitude", "family");
    fam.seed = need_u64(jfam, "seed", "family");
    spec.family = std::move(fam);
  } else {
    throw SpecError("family.kind: unknown family '" + fkind + "'");
  }
  return spec;
}

namespace {

nlohmann::json witness_to_json(const CheckWitness& w) {
  return {{"input_a", point_to_json(w.input_a)},
          {"input_b", point_to_json(w.input_b)},
          {"lhs", w.lhs},
          {"rhs", w.rhs},
          {"detail", w.detail}};
}

}  // namespace

nlohmann::json to_json(const CheckReport& report) {
  nlohmann::json j;
  j["kind"] = "check-report";
  j["property"] = report.property;
  switch (report.outcome) {
    case CheckOutcome::Pass:
      j["outcome"] = "pass";
      break;
    case CheckOutcome::Fail:
      j["outcome"] = "fail";
      break;
    case CheckOutcome::Incomplete:
      j["outcome"] = "incomplete";
      break;
  }
  j["n_samples"] = report.n_samples;
  j["max_abs_err"] = report.max_abs_err;
  j["max_rel_err"] = report.max_rel_err;
  j["seed"] = report.seed;
  j["forward_violations"] = report.forward_violations;
  j["backward_violations"] = report.backward_violations;
  j["note"] = report.note;
  j["witness"] = report.witness ? witness_to_json(*report.witness) : nlohmann::json();
  return j;
}

nlohmann::json to_json(const CanonicalAreaForm& form) {
  return {{"kind", "canonical-area-form"},
          {"dim", form.linear_part.rows()},
          {"linear_part", real_matrix_to_json(form.linear_part)},
          {"det", form.linear_part.determinant()},
          {"residual", form.residual}};
}

nlohmann::json to_json(const CanonicalCommForm& form) {
  return {{"kind", "canonical-comm-form"},
          {"dim", form.unitary.rows()},
          {"unitary", complex_matrix_to_json(form.unitary)},
          {"antiunitary", form.antiunitary},
          {"residual", form.residual}};
}

nlohmann::json to_json(const ProjectiveForm& form) {
  return {{"kind", "projective-form"},
          {"dim", form.unitary.rows()},
          {"unitary", complex_matrix_to_json(form.unitary)},
          {"antiunitary", form.antiunitary},
          {"residual", form.residual}};
}

std::string json_digest(const nlohmann::json& doc) {
  const std::string dump = doc.dump();
  const std::uint64_t h = fnv1a64(dump.data(), dump.size());
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

nlohmann::json to_json(const RunReport& report) {
  return {{"tool", std::string(kToolName)},
          {"version", std::string(kToolVersion)},
          {"command", report.command},
          {"spec_digest", report.spec_digest},
          {"parameters", report.parameters},
          {"result", report.result},
          {"wall_time_s", report.wall_time_s}};
}

void write_report_atomic(const RunReport& report, const std::filesystem::path& path) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
    out << to_json(report).dump(2) << '\n';
    if (!out) throw Error("failed writing '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace plab
