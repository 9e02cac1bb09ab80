// Finite distributive lattices given by explicit meet/join tables, lattice-
// valued correspondences with join-of-meets composition, and the idempotent
// localization that carves a copy of B_4 out of a correspondence monoid.

#ifndef RELMON_LATTICE_HPP_
#define RELMON_LATTICE_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "relmon/boolrel.hpp"

namespace relmon {

// First violated lattice axiom, with the witnessing elements (unused slots
// are -1).  Axiom names: shape, entry-range, meet-commutativity,
// join-commutativity, meet-idempotency, join-idempotency,
// meet-associativity, join-associativity, absorption-meet-join,
// absorption-join-meet, distributivity.
struct LatticeCheckError {
  std::string axiom;
  std::array<int, 3> witness;
  std::string message() const;
};

// A lattice on element ids 0..size-1.  Construction verifies the lattice
// axioms and distributivity exhaustively; the derived order is
// a <= b iff meet(a, b) = a.  Maximum size 64.
class Lattice {
 public:
  static constexpr int kMaxSize = 64;

  // Tables are size x size, row-major.
  static std::variant<Lattice, LatticeCheckError> checked(
      int size, std::vector<int> meet_table, std::vector<int> join_table,
      std::string description = "");
  // Same, but throws std::invalid_argument with the axiom message.
  static Lattice require(int size, std::vector<int> meet_table,
                         std::vector<int> join_table, std::string description = "");

  int size() const noexcept { return size_; }
  bool nontrivial() const noexcept { return size_ >= 2; }
  const std::string& description() const noexcept { return description_; }

  int meet(int a, int b) const;
  int join(int a, int b) const;
  bool leq(int a, int b) const;  // a <= b iff a ^ b = a

  int bottom() const noexcept { return bottom_; }
  int top() const noexcept { return top_; }
  // Covers of bottom; every atom c satisfies meet(c, a) in {bottom, c}.
  const std::vector<int>& atoms() const noexcept { return atoms_; }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.size_ == b.size_ && a.meet_ == b.meet_ && a.join_ == b.join_;
  }

  // raw table access, no bounds checks (ids must be valid)
  int meet_raw(int a, int b) const noexcept { return meet_[a * size_ + b]; }
  int join_raw(int a, int b) const noexcept { return join_[a * size_ + b]; }

 private:
  Lattice() = default;

  int size_ = 0;
  std::vector<std::uint8_t> meet_;
  std::vector<std::uint8_t> join_;
  int bottom_ = 0;
  int top_ = 0;
  std::vector<int> atoms_;
  std::string description_;
};

// Total order 0 < 1 < ... < k-1.
Lattice build_chain(int k);
// Subsets of a k-element set ordered by inclusion, 0 <= k <= 4.
Lattice build_boolean(int k);
// Downward-closed subsets of the poset generated by `less` (pairs (a, b)
// meaning a < b, 0-based), ordered by inclusion.  Rejects cyclic input.
Lattice build_downsets(int points, const std::vector<std::pair<int, int>>& less);

// Text format: line 1 the size m, then m meet-table rows, then m join-table
// rows, entries space-separated.
std::variant<Lattice, LatticeCheckError> read_lattice(std::istream& in,
                                                      std::string description = "");
// Poset text format: line 1 the point count k, then lines "i j" meaning
// i < j with 1-based points.
Lattice read_poset_downsets(std::istream& in);

// An n x n array of lattice element ids (n <= 6), composed like boolean
// matrices but over (join, meet).
class Correspondence {
 public:
  Correspondence(std::shared_ptr<const Lattice> lattice, SetSize n);  // all-bottom

  static Correspondence diagonal(std::shared_ptr<const Lattice> lattice, SetSize n,
                                 int on_diagonal, int off_diagonal);

  int n() const noexcept { return n_; }
  const Lattice& lattice() const noexcept { return *lattice_; }
  const std::shared_ptr<const Lattice>& lattice_ptr() const noexcept { return lattice_; }

  int at(int x, int y) const;
  void set(int x, int y, int id);

  int at_raw(int x, int y) const noexcept { return cells_[x * n_ + y]; }

  // "n:id,id,..." row-major
  std::string serialize() const;

  friend bool operator==(const Correspondence& a, const Correspondence& b) {
    return a.n_ == b.n_ && a.cells_ == b.cells_ && *a.lattice_ == *b.lattice_;
  }

 private:
  std::shared_ptr<const Lattice> lattice_;
  std::uint8_t n_;
  std::array<std::uint8_t, 36> cells_{};
};

// (rs)(x,z) = JOIN over y of MEET(r(x,y), s(y,z)).
// Throws std::invalid_argument on lattice or size mismatch.
Correspondence compose(const Correspondence& r, const Correspondence& s);

// The idempotent concentrating an atom c on the diagonal of a four-point
// window Y, and the isomorphism it induces between the localized monoid
// and B_4.
struct Localizer {
  std::shared_ptr<const Lattice> lattice;
  SetSize n;
  std::array<int, 4> window;  // 0-based points, ascending
  int atom;
  Correspondence e;
};

// Requires a nontrivial lattice, 4 <= n <= 6, four distinct in-range window
// points and an atom of the lattice.  Verifies e.e = e and throws
// std::logic_error if that fails.
Localizer make_localizer(std::shared_ptr<const Lattice> lattice, SetSize n,
                         std::array<int, 4> window, int atom);

// phi(e.alpha.e): localizes alpha, checks the structural shape (bottom off
// the window, {bottom, atom} on it; violations throw std::logic_error),
// and reads off the boolean matrix over the window.
Relation project(const Localizer& loc, const Correspondence& alpha);

// The correspondence with the atom where b holds on the window, bottom
// elsewhere; a fixed point of the localization.
Correspondence lift(const Localizer& loc, const Relation& b);

// Randomized and exhaustive verification that project/lift realize an
// isomorphism between the localized monoid and B_4.
struct IsoSuiteResult {
  bool idempotent = false;
  std::uint64_t round_trips = 0;      // project(lift(b)) = b, all 65536 b
  std::uint64_t round_trip_failures = 0;
  std::uint64_t lift_fixed_failures = 0;  // e.lift(b).e = lift(b)
  std::uint64_t pairs = 0;            // random correspondence pairs
  std::uint64_t hom_failures = 0;     // project(a'b') = project(a').project(b')
  std::uint64_t lift_project_failures = 0;  // lift(project(a')) = a'
  bool pass() const {
    return idempotent && round_trip_failures == 0 && lift_fixed_failures == 0 &&
           hom_failures == 0 && lift_project_failures == 0;
  }
};

IsoSuiteResult run_iso_suite(const Localizer& loc, std::uint64_t seed,
                             std::uint64_t pairs);

}  // namespace relmon

#endif  // RELMON_LATTICE_HPP_
