#include "relmon/boolrel.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace relmon {

namespace {

std::uint64_t bits_mask(int n) {
  const int sq = n * n;
  return sq == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << sq) - 1;
}

int hex_width(int n) { return (n * n + 3) / 4; }

}  // namespace

SetSize::SetSize(int n) {
  if (n < 1 || n > 8) {
    throw std::invalid_argument("set size must be in 1..8, got " +
                                std::to_string(n));
  }
  n_ = static_cast<std::uint8_t>(n);
}

std::uint64_t relation_count(SetSize n) {
  if (n.value() == 8) {
    throw std::invalid_argument("2^64 relations at n = 8 do not fit a 64-bit count");
  }
  return std::uint64_t(1) << (n.value() * n.value());
}

Relation::Relation(SetSize n, std::uint64_t bits)
    : n_(static_cast<std::uint8_t>(n.value())), bits_(bits) {
  if (bits & ~bits_mask(n_)) {
    throw std::invalid_argument("relation bits exceed n^2 positions");
  }
}

Relation Relation::identity(SetSize n) {
  std::uint64_t b = 0;
  for (int i = 0; i < n.value(); ++i) b |= std::uint64_t(1) << (n.value() * i + i);
  return Relation(n, b);
}

Relation Relation::zero(SetSize n) { return Relation(n, 0); }

Relation Relation::full(SetSize n) { return Relation(n, bits_mask(n.value())); }

bool Relation::contains(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_) {
    throw std::out_of_range("relation index out of range");
  }
  return (bits_ >> (n_ * i + j)) & 1;
}

std::uint64_t Relation::row(int i) const {
  if (i < 0 || i >= n_) throw std::out_of_range("row index out of range");
  return (bits_ >> (n_ * i)) & ((std::uint64_t(1) << n_) - 1);
}

int Relation::popcount() const noexcept { return std::popcount(bits_); }

std::string Relation::to_hex() const {
  static const char* digits = "0123456789abcdef";
  const int w = hex_width(n_);
  std::string out;
  out.reserve(w + 2);
  out += std::to_string(int(n_));
  out += ':';
  for (int d = w - 1; d >= 0; --d) {
    out += digits[(bits_ >> (4 * d)) & 15];
  }
  return out;
}

Relation Relation::from_hex(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0) {
    throw std::invalid_argument("relation literal must be \"n:hex\"");
  }
  int n = 0;
  for (char c : text.substr(0, colon)) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad set size in relation literal");
    n = n * 10 + (c - '0');
  }
  SetSize size(n);
  std::string_view hex = text.substr(colon + 1);
  if (static_cast<int>(hex.size()) != hex_width(n)) {
    throw std::invalid_argument("relation literal has wrong digit count for n=" +
                                std::to_string(n));
  }
  std::uint64_t bits = 0;
  for (char c : hex) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else throw std::invalid_argument("bad hex digit in relation literal");
    bits = (bits << 4) | std::uint64_t(d);
  }
  return Relation(size, bits);
}

ComposeTable::ComposeTable(const Relation& rhs)
    : n_(static_cast<std::uint8_t>(rhs.n())) {
  const int entries = 1 << n_;
  table_[0] = 0;
  // subset DP: table[m] = table[m without lowest bit] | row(lowest bit)
  for (int m = 1; m < entries; ++m) {
    const int low = std::countr_zero(static_cast<unsigned>(m));
    table_[m] = table_[m & (m - 1)] | rhs.row(low);
  }
}

Relation ComposeTable::apply(const Relation& lhs) const {
  if (lhs.n() != n_) {
    throw std::invalid_argument("compose: size mismatch (" +
                                std::to_string(lhs.n()) + " vs " +
                                std::to_string(int(n_)) + ")");
  }
  return Relation(SetSize(n_), apply_bits(lhs.bits()));
}

Relation compose(const Relation& r, const Relation& s) {
  if (r.n() != s.n()) {
    throw std::invalid_argument("compose: size mismatch (" +
                                std::to_string(r.n()) + " vs " +
                                std::to_string(s.n()) + ")");
  }
  return ComposeTable(s).apply(r);
}

bool is_unit(const Relation& r) {
  const int n = r.n();
  std::uint64_t seen = 0;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t row = r.row(i);
    if (std::popcount(row) != 1) return false;
    seen |= row;
  }
  return seen == (std::uint64_t(1) << n) - 1;
}

std::vector<Relation> units(SetSize n) {
  std::vector<int> perm(n.value());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Relation> out;
  do {
    std::uint64_t b = 0;
    for (int i = 0; i < n.value(); ++i) {
      b |= std::uint64_t(1) << (n.value() * i + perm[i]);
    }
    out.emplace_back(n, b);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

RelationRange::RelationRange(SetSize n) : n_(n), count_(relation_count(n)) {
  if (n.value() > 4) {
    throw std::invalid_argument("full enumeration is limited to n <= 4");
  }
}

RelationRange all_relations(SetSize n) { return RelationRange(n); }

}  // namespace relmon
