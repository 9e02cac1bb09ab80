// Binary relations on a small set, packed into machine words.
//
// A relation on an n-element set (1 <= n <= 8) is an n x n boolean matrix
// stored row-major in the low n*n bits of a uint64_t: bit (i*n + j) is set
// iff (i,j) is in the relation (0-based indices).  Composition is the
// boolean matrix product; the monoid of all such relations is B_n.

#ifndef RELMON_BOOLREL_HPP_
#define RELMON_BOOLREL_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace relmon {

// Cardinality of the underlying set.  Full-monoid enumeration is only
// allowed up to 4 (2^25 elements at n = 5 blows the budget); composition
// and serialization work up to 8.
class SetSize {
 public:
  explicit SetSize(int n);
  int value() const noexcept { return n_; }
  friend bool operator==(SetSize, SetSize) = default;

 private:
  std::uint8_t n_;
};

// Number of relations on an n-element set, 2^(n^2).
std::uint64_t relation_count(SetSize n);

class Relation {
 public:
  Relation(SetSize n, std::uint64_t bits);

  static Relation identity(SetSize n);
  static Relation zero(SetSize n);
  static Relation full(SetSize n);

  int n() const noexcept { return n_; }
  SetSize set_size() const noexcept { return SetSize(n_); }
  std::uint64_t bits() const noexcept { return bits_; }

  bool contains(int i, int j) const;
  std::uint64_t row(int i) const;  // n-bit mask of row i
  int popcount() const noexcept;

  // Wire form "n:hex": lowercase hex of the bit vector, zero-padded to
  // ceil(n^2/4) digits, most significant bit = position n^2 - 1.
  // The 4x4 identity serializes as "4:8421".
  std::string to_hex() const;
  static Relation from_hex(std::string_view text);

  friend bool operator==(const Relation&, const Relation&) = default;
  friend std::strong_ordering operator<=>(const Relation&, const Relation&) = default;

 private:
  std::uint8_t n_;
  std::uint64_t bits_;
};

// OR-combination table of one fixed right operand's rows, indexed by row
// bitmask.  Composing any left operand against it costs n table lookups:
//   row_i(l . r) = OR over j in row_i(l) of row_j(r) = table[row_i(l)].
class ComposeTable {
 public:
  explicit ComposeTable(const Relation& rhs);

  int n() const noexcept { return n_; }
  std::uint64_t apply_bits(std::uint64_t lhs_bits) const noexcept {
    std::uint64_t out = 0;
    const std::uint64_t mask = (1u << n_) - 1;
    for (int i = 0; i < n_; ++i) {
      out |= table_[(lhs_bits >> (n_ * i)) & mask] << (n_ * i);
    }
    return out;
  }
  Relation apply(const Relation& lhs) const;

 private:
  std::uint8_t n_;
  std::array<std::uint64_t, 256> table_;  // 2^n entries used
};

// r . s, i.e. (rs)(i,k) = OR over j of r(i,j) AND s(j,k).
// Throws std::invalid_argument on size mismatch.
Relation compose(const Relation& r, const Relation& s);

// True iff r is a permutation matrix (exactly one bit per row and per
// column); equivalently r has a two-sided compositional inverse.
bool is_unit(const Relation& r);

// The n! permutation relations, in lexicographic order of the permutation.
std::vector<Relation> units(SetSize n);

// All 2^(n^2) relations in ascending bit-vector order, n <= 4.
class RelationRange {
 public:
  explicit RelationRange(SetSize n);

  class iterator {
   public:
    using value_type = Relation;
    using difference_type = std::int64_t;

    iterator(SetSize n, std::uint64_t v) : n_(n), v_(v) {}
    Relation operator*() const { return Relation(n_, v_); }
    iterator& operator++() { ++v_; return *this; }
    iterator operator++(int) { iterator t = *this; ++v_; return t; }
    friend bool operator==(const iterator&, const iterator&) = default;

   private:
    SetSize n_;
    std::uint64_t v_;
  };

  iterator begin() const { return iterator(n_, 0); }
  iterator end() const { return iterator(n_, count_); }
  std::uint64_t size() const { return count_; }

 private:
  SetSize n_;
  std::uint64_t count_;
};

RelationRange all_relations(SetSize n);

}  // namespace relmon

#endif  // RELMON_BOOLREL_HPP_
