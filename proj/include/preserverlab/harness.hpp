#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "preserverlab/blackbox.hpp"
#include "preserverlab/canonicalize.hpp"
#include "preserverlab/check.hpp"

namespace plab {

inline constexpr std::string_view kToolName = "preserverlab";
inline constexpr std::string_view kToolVersion = "0.1.0";

// A deterministic per-input scalar rule used by map families for their sign
// and offset freedoms. `trace` is only meaningful on Hermitian inputs and
// only as a real rule; sign rules must produce exactly +-1.
struct Rule {
  enum class Kind { Constant, Trace, SeededHash };
  Kind kind = Kind::Constant;
  double value = 1.0;
  std::uint64_t seed = 0;

  static Rule constant(double v) { return Rule{Kind::Constant, v, 0}; }
  static Rule trace() { return Rule{Kind::Trace, 0.0, 0}; }
  static Rule seeded_hash(std::uint64_t s) { return Rule{Kind::SeededHash, 0.0, s}; }

  double real_at(const RVector& v) const;
  double real_at(const CMatrix& a) const;
  int sign_at(const RVector& v) const;
  int sign_at(const CMatrix& a) const;
};

// m(v) = sign_rule(v) * matrix * v on real vectors. The matrix is not
// constrained here: non-preserving members exist on purpose.
struct SignedLinearFamily {
  RMatrix matrix;
  Rule sign_rule;
};

// m(A) = tau_rule(A) * U A' U* + f_rule(A) * I on Hermitian matrices,
// where A' is A or its entrywise conjugate.
struct ConjugationAffineFamily {
  CMatrix unitary;
  bool antiunitary = false;
  Rule tau_rule;
  Rule f_rule;
};

// phi(P) = U P' U* on rank-one projections.
struct ProjectionMapFamily {
  CMatrix unitary;
  bool antiunitary = false;
};

// Point-for-point lookup table; queries are matched entrywise within 1e-12
// and anything else raises MissingSample.
struct TableEntry {
  std::variant<RVector, CMatrix> input;
  std::variant<RVector, CMatrix> output;
};

struct TableFamily {
  std::vector<TableEntry> entries;
};

// Wraps a base map with a deterministic defect of the given magnitude:
//   scale_singular_value: largest singular value of the family's linear
//     data scaled by (1 + magnitude)
//   nonscalar_offset: magnitude * e_0 e_0* added to every output
//     (Hermitian-space families only)
//   noise: magnitude * G(x) added to the output, G a Gaussian matrix or
//     vector seeded by a hash of the input, so repeated queries agree
struct CorruptedFamily {
  std::shared_ptr<struct MapSpec> base;
  std::string corruption;
  double magnitude = 0.0;
  std::uint64_t seed = 0;
};

struct MapSpec {
  Space space;
  std::variant<SignedLinearFamily, ConjugationAffineFamily, ProjectionMapFamily,
               TableFamily, CorruptedFamily>
      family;
};

// Haar-distributed orthogonal / unitary matrices (QR with the standard
// phase fix), 2 <= d <= 8. Orthogonality defect stays below 1e-12.
RMatrix haar_orthogonal(int d, std::uint64_t seed);
CMatrix haar_unitary(int d, std::uint64_t seed);

// Compiles a specification into an evaluatable map. SpecError on invalid
// family data (wrong space, non-unit unitary, malformed rules).
BlackBoxMap make_map(const MapSpec& spec);

// Area-preserver zoo: d = 2 gives |det| = 1 and generically non-orthogonal,
// d >= 3 gives Haar orthogonal; the sign freedom is a seeded hash rule.
MapSpec make_area_preserver(int d, std::uint64_t seed);

// Commutator-norm-preserver zoo: Haar unitary conjugation, seeded-hash tau,
// trace offset.
MapSpec make_comm_preserver(int d, std::uint64_t seed, bool antiunitary = false);

// Projection-map zoo for the same unitaries.
MapSpec make_projection_map(int d, std::uint64_t seed, bool antiunitary = false);

// Wraps `base` in a CorruptedFamily.
MapSpec corrupt(const MapSpec& base, std::string_view corruption, double magnitude,
                std::uint64_t seed);

nlohmann::json to_json(const MapSpec& spec);
MapSpec mapspec_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const CheckReport& report);
nlohmann::json to_json(const CanonicalAreaForm& form);
nlohmann::json to_json(const CanonicalCommForm& form);
nlohmann::json to_json(const ProjectiveForm& form);

nlohmann::json real_vector_to_json(const RVector& v);
nlohmann::json real_matrix_to_json(const RMatrix& m);
nlohmann::json complex_matrix_to_json(const CMatrix& m);
RVector real_vector_from_json(const nlohmann::json& j);
RMatrix real_matrix_from_json(const nlohmann::json& j);
CMatrix complex_matrix_from_json(const nlohmann::json& j);

// Canonical digest of a JSON document: FNV-1a 64 over the sorted-key compact
// dump, as a fixed-width hex string. Key order of the input text is
// irrelevant by construction.
std::string json_digest(const nlohmann::json& doc);

struct RunReport {
  std::string command;       // check | canonicalize | suite
  std::string spec_digest;   // empty when no spec document is involved
  nlohmann::json parameters; // echoed invocation parameters
  nlohmann::json result;     // command payload
  double wall_time_s = 0.0;
};

nlohmann::json to_json(const RunReport& report);

// Serializes to a temp file in the target directory, then renames, so
// readers never observe a partial document.
void write_report_atomic(const RunReport& report, const std::filesystem::path& path);

}  // namespace plab
