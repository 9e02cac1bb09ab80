// The four-value multiplicative target {1, x, y, 0} with x^2 = y^2 = xy =
// yx = 0, the piecewise map from a classified B_n onto it, two independent
// verification routes for the homomorphism property, and the machine-
// readable certificate document.

#ifndef RELMON_CERT_HPP_
#define RELMON_CERT_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relmon/boolrel.hpp"
#include "relmon/lattice.hpp"
#include "relmon/sieve.hpp"

namespace relmon {

enum class HomImage : std::uint8_t { one, x, y, zero };

// one is the identity, zero absorbs, and any product of x and y vanishes
// (the target ring is commutative, so yx = xy = 0 too).
HomImage target_mul(HomImage a, HomImage b) noexcept;

const char* to_string(HomImage v);

struct HomTable {
  SetSize n;
  std::vector<HomImage> image;  // indexed by relation bit-vector
};

// image = one on units, x on associates of p, y on associates of q, zero
// elsewhere.  Requires p, q irreducible and non-associate (the
// well-definedness condition); throws std::invalid_argument otherwise.
HomTable build_hom(const Classification& c, const Relation& p, const Relation& q);

struct FactReport {
  std::string name;
  bool pass = false;
  std::string detail;  // first violation, empty when pass
};

struct HomVerifyReport {
  bool pass = false;
  // structured route: one entry per verified fact
  std::vector<FactReport> facts;
  // exhaustive route: pairs scanned before the first counterexample in
  // right-operand-major order (all of them on pass)
  std::uint64_t pairs_checked = 0;
  std::optional<std::pair<Relation, Relation>> counterexample;
};

// Checks image[compose(a, b)] = target_mul(image[a], image[b]) over every
// ordered pair; 2^32 pairs at n = 4.  Workers scan disjoint right-operand
// chunks and stop cooperatively once a counterexample with a smaller scan
// position can no longer appear, so the reported counterexample is the
// first in scan order.
HomVerifyReport verify_hom_exhaustive(const HomTable& t, int workers = 0);

// Verifies the three facts the homomorphism property reduces to:
//   1. units map to one, nothing else does, and the image is constant on
//      associate classes;
//   2. the reducible elements are exactly the products of two non-units
//      (so no such product is a unit or an irreducible);
//   3. every reducible element maps to zero.
// Reads the classification; no full pair scan.
HomVerifyReport verify_hom_structured(const HomTable& t, const Classification& c);

// ---- certificate document ----

struct CheckLine {
  std::string name;
  std::string mode;  // "structured", "exhaustive" or "random(seed,count)"
  bool pass = false;
  std::int64_t elapsed_ms = 0;
};

struct Certificate {
  std::vector<std::pair<std::string, std::string>> subject;
  std::optional<std::pair<Relation, Relation>> witnesses;
  std::vector<std::pair<std::string, std::string>> localizer;
  std::vector<CheckLine> checks;

  // true only when a witness pair is present and every check passed
  bool established() const;
  std::string verdict() const;

  // Sections SUBJECT / WITNESSES / LOCALIZER (when present) / CHECKS /
  // VERDICT; a pure function of the record, byte-stable.
  std::string serialize() const;
};

enum class HomVerifyMode { structured, exhaustive, both };

struct CertifyOptions {
  HomVerifyMode mode = HomVerifyMode::both;
  SieveMode sieve_mode = SieveMode::symmetry_reduced;
  int workers = 0;
  std::uint64_t seed = 42;
  std::uint64_t iso_pairs = 100000;
  // measured wall times in check lines; off by default so identical inputs
  // produce byte-identical certificates
  bool measure_timings = false;
};

// Full pipeline over B_n: classify, pick witnesses, verify the
// homomorphism per opt.mode.
Certificate certify_relations(SetSize n, const CertifyOptions& opt);

// Full pipeline over a correspondence monoid: validate the lattice, build
// the localizer (atom < 0 picks the smallest atom id), verify the
// isomorphism with B_4, then run the B_4 chain on the localized monoid.
Certificate certify_correspondences(std::shared_ptr<const Lattice> lattice,
                                    SetSize n, std::array<int, 4> window,
                                    int atom, const CertifyOptions& opt);

}  // namespace relmon

#endif  // RELMON_CERT_HPP_
