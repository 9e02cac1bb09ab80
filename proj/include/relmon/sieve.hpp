// Classification of B_n (n <= 4) into units, reducibles and irreducibles,
// associate-class canonical forms, and the two-witness pair.
//
// An element is reducible if it factors as a product of two non-units,
// irreducible if it is a non-unit admitting no such factorization.  Two
// elements are associates if one is u.r.v for units u, v; the canonical
// form of an associate class is its minimum bit-vector value.

#ifndef RELMON_SIEVE_HPP_
#define RELMON_SIEVE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relmon/boolrel.hpp"

namespace relmon {

enum class Status : std::uint8_t { unit, reducible, irreducible };

const char* to_string(Status s);

struct Classification {
  SetSize n;
  // One entry per relation, indexed by bit-vector value.
  std::vector<Status> status;
  // Associate-class canonical form per relation (minimum of the orbit).
  std::vector<std::uint16_t> canonical;
  // Canonical representatives of the irreducible classes, ascending.
  std::vector<std::uint16_t> class_reps;

  std::uint64_t count(Status s) const;
};

bool operator==(const Classification& a, const Classification& b);

// Minimum bit-vector value over the (n!)^2 orbit {u.r.v : u, v units}.
// Cached action tables make this cheap for n <= 4; larger n enumerate
// S_n x S_n per call.
Relation canonical(const Relation& r);

bool are_associates(const Relation& r, const Relation& s);

enum class SieveMode {
  // Mark compose(a, b) over all ordered non-unit pairs (a, b).
  full_pairs,
  // Right operands restricted to associate-class representatives, then the
  // marked set is closed under the associate action.  Identical output.
  symmetry_reduced,
};

// Classify every element of B_n.  workers <= 0 means hardware concurrency;
// results do not depend on the worker count.
Classification classify_all(SetSize n, SieveMode mode = SieveMode::full_pairs,
                            int workers = 0);

// The two smallest irreducible class representatives, or nullopt when
// fewer than two classes exist.
std::optional<std::pair<Relation, Relation>> witness_pair(const Classification& c);

// Independent factorization search: scans every non-unit left factor a and
// decides via the residual a\p whether some non-unit b solves a.b = p.
// Returns the first factorization in ascending a, or nullopt if p admits
// none (i.e. p is a unit or irreducible).  n <= 4.
std::optional<std::pair<Relation, Relation>> find_nonunit_factorization(const Relation& p);

// CSV export: header "relation,status,canonical", one row per element in
// ascending bit-vector order, relations in "n:hex" form.
std::string to_csv(const Classification& c);

}  // namespace relmon

#endif  // RELMON_SIEVE_HPP_
