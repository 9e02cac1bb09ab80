#include "relmon/lattice.hpp"

#include <algorithm>
#include <istream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace relmon {

namespace {

std::string witness_text(const std::array<int, 3>& w) {
  std::string out = "(";
  for (int i = 0; i < 3; ++i) {
    if (w[i] < 0) break;
    if (i) out += ',';
    out += std::to_string(w[i]);
  }
  out += ')';
  return out;
}

}  // namespace

std::string LatticeCheckError::message() const {
  return axiom + " violated at " + witness_text(witness);
}

std::variant<Lattice, LatticeCheckError> Lattice::checked(
    int size, std::vector<int> meet_table, std::vector<int> join_table,
    std::string description) {
  const auto fail = [](std::string axiom, int a, int b, int c) {
    return LatticeCheckError{std::move(axiom), {a, b, c}};
  };
  if (size < 1 || size > kMaxSize ||
      meet_table.size() != static_cast<std::size_t>(size) * size ||
      join_table.size() != static_cast<std::size_t>(size) * size) {
    return fail("shape", -1, -1, -1);
  }
  for (const auto* table : {&meet_table, &join_table}) {
    for (int a = 0; a < size; ++a) {
      for (int b = 0; b < size; ++b) {
        const int v = (*table)[a * size + b];
        if (v < 0 || v >= size) return fail("entry-range", a, b, -1);
      }
    }
  }
  const auto mt = [&](int a, int b) { return meet_table[a * size + b]; };
  const auto jn = [&](int a, int b) { return join_table[a * size + b]; };

  for (int a = 0; a < size; ++a) {
    for (int b = 0; b < size; ++b) {
      if (mt(a, b) != mt(b, a)) return fail("meet-commutativity", a, b, -1);
    }
  }
  for (int a = 0; a < size; ++a) {
    for (int b = 0; b < size; ++b) {
      if (jn(a, b) != jn(b, a)) return fail("join-commutativity", a, b, -1);
    }
  }
  for (int a = 0; a < size; ++a) {
    if (mt(a, a) != a) return fail("meet-idempotency", a, -1, -1);
  }
  for (int a = 0; a < size; ++a) {
    if (jn(a, a) != a) return fail("join-idempotency", a, -1, -1);
  }
  for (int a = 0; a < size; ++a) {
    for (int b = 0; b < size; ++b) {
      for (int c = 0; c < size; ++c) {
        if (mt(mt(a, b), c) != mt(a, mt(b, c))) {
          return fail("meet-associativity", a, b, c);
        }
      }
    }
  }
  for (int a = 0; a < size; ++a) {
    for (int b = 0; b < size; ++b) {
      for (int c = 0; c < size; ++c) {
        if (jn(jn(a, b), c) != jn(a, jn(b, c))) {
          return fail("join-associativity", a, b, c);
        }
      }
    }
  }
  for (int a = 0; a < size; ++a) {
    for (int b = 0; b < size; ++b) {
      if (mt(a, jn(a, b)) != a) return fail("absorption-meet-join", a, b, -1);
    }
  }
  for (int a = 0; a < size; ++a) {
    for (int b = 0; b < size; ++b) {
      if (jn(a, mt(a, b)) != a) return fail("absorption-join-meet", a, b, -1);
    }
  }
  // one direction suffices; the dual law is equivalent in any lattice
  for (int a = 0; a < size; ++a) {
    for (int b = 0; b < size; ++b) {
      for (int c = 0; c < size; ++c) {
        if (mt(a, jn(b, c)) != jn(mt(a, b), mt(a, c))) {
          return fail("distributivity", a, b, c);
        }
      }
    }
  }

  Lattice out;
  out.size_ = size;
  out.meet_.assign(meet_table.begin(), meet_table.end());
  out.join_.assign(join_table.begin(), join_table.end());
  out.description_ = std::move(description);
  int bot = 0, top = 0;
  for (int a = 1; a < size; ++a) {
    bot = out.meet_raw(bot, a);
    top = out.join_raw(top, a);
  }
  out.bottom_ = bot;
  out.top_ = top;
  for (int c = 0; c < size; ++c) {
    if (c == bot) continue;
    bool covers = true;
    for (int z = 0; z < size; ++z) {
      if (z != c && z != bot && out.meet_raw(z, c) == z) {
        covers = false;
        break;
      }
    }
    if (covers) out.atoms_.push_back(c);
  }
  return out;
}

Lattice Lattice::require(int size, std::vector<int> meet_table,
                         std::vector<int> join_table, std::string description) {
  auto result = checked(size, std::move(meet_table), std::move(join_table),
                        std::move(description));
  if (auto* err = std::get_if<LatticeCheckError>(&result)) {
    throw std::invalid_argument("not a distributive lattice: " + err->message());
  }
  return std::get<Lattice>(std::move(result));
}

int Lattice::meet(int a, int b) const {
  if (a < 0 || a >= size_ || b < 0 || b >= size_) {
    throw std::out_of_range("lattice element id out of range");
  }
  return meet_raw(a, b);
}

int Lattice::join(int a, int b) const {
  if (a < 0 || a >= size_ || b < 0 || b >= size_) {
    throw std::out_of_range("lattice element id out of range");
  }
  return join_raw(a, b);
}

bool Lattice::leq(int a, int b) const { return meet(a, b) == a; }

Lattice build_chain(int k) {
  if (k < 1 || k > Lattice::kMaxSize) {
    throw std::invalid_argument("chain length must be in 1..64");
  }
  std::vector<int> meet(k * k), join(k * k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      meet[a * k + b] = std::min(a, b);
      join[a * k + b] = std::max(a, b);
    }
  }
  return Lattice::require(k, std::move(meet), std::move(join),
                          "chain(" + std::to_string(k) + ")");
}

Lattice build_boolean(int k) {
  if (k < 0 || k > 4) {
    throw std::invalid_argument("boolean lattice exponent must be in 0..4");
  }
  const int m = 1 << k;
  std::vector<int> meet(m * m), join(m * m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      meet[a * m + b] = a & b;
      join[a * m + b] = a | b;
    }
  }
  return Lattice::require(m, std::move(meet), std::move(join),
                          "boolean(" + std::to_string(k) + ")");
}

Lattice build_downsets(int points, const std::vector<std::pair<int, int>>& less) {
  if (points < 0 || points > 16) {
    throw std::invalid_argument("poset must have 0..16 points");
  }
  std::vector<std::vector<bool>> lt(points, std::vector<bool>(points, false));
  for (const auto& [a, b] : less) {
    if (a < 0 || a >= points || b < 0 || b >= points) {
      throw std::invalid_argument("poset relation out of range");
    }
    lt[a][b] = true;
  }
  // transitive closure, then i < i means a cycle
  for (int k = 0; k < points; ++k) {
    for (int i = 0; i < points; ++i) {
      for (int j = 0; j < points; ++j) {
        if (lt[i][k] && lt[k][j]) lt[i][j] = true;
      }
    }
  }
  for (int i = 0; i < points; ++i) {
    if (lt[i][i]) throw std::invalid_argument("poset relation is cyclic");
  }

  std::vector<std::uint32_t> downsets;
  for (std::uint32_t s = 0; s < (std::uint32_t(1) << points); ++s) {
    bool closed = true;
    for (int b = 0; b < points && closed; ++b) {
      if (!((s >> b) & 1)) continue;
      for (int a = 0; a < points; ++a) {
        if (lt[a][b] && !((s >> a) & 1)) {
          closed = false;
          break;
        }
      }
    }
    if (closed) downsets.push_back(s);
  }
  const int m = static_cast<int>(downsets.size());
  if (m > Lattice::kMaxSize) {
    throw std::invalid_argument("downset lattice exceeds 64 elements");
  }
  const auto id_of = [&](std::uint32_t s) {
    return static_cast<int>(std::lower_bound(downsets.begin(), downsets.end(), s) -
                            downsets.begin());
  };
  std::vector<int> meet(m * m), join(m * m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      meet[a * m + b] = id_of(downsets[a] & downsets[b]);
      join[a * m + b] = id_of(downsets[a] | downsets[b]);
    }
  }
  return Lattice::require(m, std::move(meet), std::move(join),
                          "downsets(" + std::to_string(points) + ")");
}

std::variant<Lattice, LatticeCheckError> read_lattice(std::istream& in,
                                                      std::string description) {
  int m = 0;
  if (!(in >> m) || m < 1 || m > Lattice::kMaxSize) {
    throw std::invalid_argument("lattice file: bad size line");
  }
  std::vector<int> meet(m * m), join(m * m);
  for (int& v : meet) {
    if (!(in >> v)) throw std::invalid_argument("lattice file: truncated meet table");
  }
  for (int& v : join) {
    if (!(in >> v)) throw std::invalid_argument("lattice file: truncated join table");
  }
  return Lattice::checked(m, std::move(meet), std::move(join), std::move(description));
}

Lattice read_poset_downsets(std::istream& in) {
  int k = 0;
  if (!(in >> k)) throw std::invalid_argument("poset file: bad point count");
  std::vector<std::pair<int, int>> less;
  int a, b;
  while (in >> a >> b) {
    if (a < 1 || a > k || b < 1 || b > k) {
      throw std::invalid_argument("poset file: point out of range (points are 1-based)");
    }
    less.emplace_back(a - 1, b - 1);
  }
  return build_downsets(k, less);
}

Correspondence::Correspondence(std::shared_ptr<const Lattice> lattice, SetSize n)
    : lattice_(std::move(lattice)), n_(static_cast<std::uint8_t>(n.value())) {
  if (!lattice_) throw std::invalid_argument("correspondence needs a lattice");
  if (n_ > 6) throw std::invalid_argument("correspondences are limited to n <= 6");
  cells_.fill(static_cast<std::uint8_t>(lattice_->bottom()));
}

Correspondence Correspondence::diagonal(std::shared_ptr<const Lattice> lattice,
                                        SetSize n, int on_diagonal,
                                        int off_diagonal) {
  Correspondence out(std::move(lattice), n);
  for (int x = 0; x < out.n(); ++x) {
    for (int y = 0; y < out.n(); ++y) {
      out.set(x, y, x == y ? on_diagonal : off_diagonal);
    }
  }
  return out;
}

int Correspondence::at(int x, int y) const {
  if (x < 0 || x >= n_ || y < 0 || y >= n_) {
    throw std::out_of_range("correspondence index out of range");
  }
  return cells_[x * n_ + y];
}

void Correspondence::set(int x, int y, int id) {
  if (x < 0 || x >= n_ || y < 0 || y >= n_) {
    throw std::out_of_range("correspondence index out of range");
  }
  if (id < 0 || id >= lattice_->size()) {
    throw std::out_of_range("lattice element id out of range");
  }
  cells_[x * n_ + y] = static_cast<std::uint8_t>(id);
}

std::string Correspondence::serialize() const {
  std::string out = std::to_string(int(n_));
  out += ':';
  for (int i = 0; i < n_ * n_; ++i) {
    if (i) out += ',';
    out += std::to_string(int(cells_[i]));
  }
  return out;
}

Correspondence compose(const Correspondence& r, const Correspondence& s) {
  if (r.n() != s.n()) {
    throw std::invalid_argument("compose: correspondence size mismatch");
  }
  if (r.lattice_ptr() != s.lattice_ptr() && !(r.lattice() == s.lattice())) {
    throw std::invalid_argument("compose: correspondences over different lattices");
  }
  const Lattice& lat = r.lattice();
  const int n = r.n();
  Correspondence out(r.lattice_ptr(), SetSize(n));
  for (int x = 0; x < n; ++x) {
    for (int z = 0; z < n; ++z) {
      int acc = lat.bottom();
      for (int y = 0; y < n; ++y) {
        acc = lat.join_raw(acc, lat.meet_raw(r.at_raw(x, y), s.at_raw(y, z)));
      }
      out.set(x, z, acc);
    }
  }
  return out;
}

Localizer make_localizer(std::shared_ptr<const Lattice> lattice, SetSize n,
                         std::array<int, 4> window, int atom) {
  if (!lattice) throw std::invalid_argument("localizer needs a lattice");
  if (!lattice->nontrivial()) {
    throw std::invalid_argument("nontrivial lattice required");
  }
  if (n.value() < 4) {
    throw std::invalid_argument("localization needs a set of size >= 4");
  }
  if (n.value() > 6) {
    throw std::invalid_argument("correspondences are limited to n <= 6");
  }
  std::sort(window.begin(), window.end());
  for (int i = 0; i < 4; ++i) {
    if (window[i] < 0 || window[i] >= n.value()) {
      throw std::invalid_argument("window point out of range");
    }
    if (i > 0 && window[i] == window[i - 1]) {
      throw std::invalid_argument("window points must be distinct");
    }
  }
  const auto& atoms = lattice->atoms();
  if (std::find(atoms.begin(), atoms.end(), atom) == atoms.end()) {
    throw std::invalid_argument("element " + std::to_string(atom) +
                                " is not an atom (cover of bottom)");
  }

  Correspondence e(lattice, n);
  for (int p : window) e.set(p, p, atom);
  if (!(compose(e, e) == e)) {
    throw std::logic_error("localizer idempotent check failed");
  }
  return Localizer{std::move(lattice), n, window, atom, std::move(e)};
}

Relation project(const Localizer& loc, const Correspondence& alpha) {
  const Correspondence beta = compose(compose(loc.e, alpha), loc.e);
  const int bottom = loc.lattice->bottom();
  std::array<bool, 6> in_window{};
  for (int p : loc.window) in_window[p] = true;

  std::uint64_t bits = 0;
  for (int x = 0; x < loc.n.value(); ++x) {
    for (int y = 0; y < loc.n.value(); ++y) {
      const int v = beta.at_raw(x, y);
      if (!in_window[x] || !in_window[y]) {
        if (v != bottom) {
          throw std::logic_error("localized element nonzero outside the window");
        }
        continue;
      }
      if (v != bottom && v != loc.atom) {
        throw std::logic_error("localized element takes a value other than "
                               "bottom or the atom");
      }
      if (v == loc.atom) {
        const auto idx = [&](int p) {
          return static_cast<int>(std::find(loc.window.begin(), loc.window.end(), p) -
                                  loc.window.begin());
        };
        bits |= std::uint64_t(1) << (4 * idx(x) + idx(y));
      }
    }
  }
  return Relation(SetSize(4), bits);
}

Correspondence lift(const Localizer& loc, const Relation& b) {
  if (b.n() != 4) {
    throw std::invalid_argument("lift expects a relation on 4 points");
  }
  Correspondence out(loc.lattice, loc.n);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (b.contains(i, j)) out.set(loc.window[i], loc.window[j], loc.atom);
    }
  }
  return out;
}

IsoSuiteResult run_iso_suite(const Localizer& loc, std::uint64_t seed,
                             std::uint64_t pairs) {
  IsoSuiteResult res;
  res.idempotent = compose(loc.e, loc.e) == loc.e;

  for (std::uint64_t v = 0; v < 65536; ++v) {
    const Relation b(SetSize(4), v);
    const Correspondence lifted = lift(loc, b);
    if (!(project(loc, lifted) == b)) ++res.round_trip_failures;
    if (!(compose(compose(loc.e, lifted), loc.e) == lifted)) {
      ++res.lift_fixed_failures;
    }
    ++res.round_trips;
  }

  std::mt19937_64 rng(seed);
  const int lat_size = loc.lattice->size();
  const auto random_corr = [&] {
    Correspondence c(loc.lattice, loc.n);
    for (int x = 0; x < loc.n.value(); ++x) {
      for (int y = 0; y < loc.n.value(); ++y) {
        c.set(x, y, static_cast<int>(rng() % lat_size));
      }
    }
    return c;
  };

  for (std::uint64_t k = 0; k < pairs; ++k) {
    const Correspondence alpha = random_corr();
    const Correspondence beta = random_corr();
    const Correspondence a1 = compose(compose(loc.e, alpha), loc.e);
    const Correspondence b1 = compose(compose(loc.e, beta), loc.e);
    const Relation pa = project(loc, a1);
    const Relation pb = project(loc, b1);
    if (!(project(loc, compose(a1, b1)) == compose(pa, pb))) ++res.hom_failures;
    if (!(lift(loc, pa) == a1)) ++res.lift_project_failures;
    ++res.pairs;
  }
  return res;
}

}  // namespace relmon
