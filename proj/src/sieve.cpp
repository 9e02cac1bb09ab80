#include "relmon/sieve.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "parallel.hpp"

namespace relmon {

namespace {

// ---- associate action (u, v) -> u.r.v as row/column permutations ----
//
// For permutation relations u, v given by sigma, tau, the image has
// (u.r.v)(i,k) = r(sigma(i), tau^{-1}(k)); rows are gathered through sigma
// and each row's bits are pushed through tau.

struct ActionSet {
  int n;
  // column remap tables, one per permutation tau: colmap[m] = {tau(j) : j in m}
  std::vector<std::vector<std::uint32_t>> colmaps;
  struct Action {
    std::array<std::uint8_t, 4> src;  // sigma(i) per target row i
    const std::uint32_t* colmap;
  };
  std::vector<Action> actions;  // all (n!)^2 pairs

  explicit ActionSet(int n_in) : n(n_in) {
    std::vector<std::array<std::uint8_t, 4>> perms;
    std::array<std::uint8_t, 4> p{};
    std::iota(p.begin(), p.begin() + n, 0);
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.begin() + n));

    colmaps.reserve(perms.size());
    for (const auto& tau : perms) {
      std::vector<std::uint32_t> map(std::size_t(1) << n);
      for (std::uint32_t m = 0; m < map.size(); ++m) {
        std::uint32_t w = 0;
        for (int j = 0; j < n; ++j) {
          if ((m >> j) & 1) w |= std::uint32_t(1) << tau[j];
        }
        map[m] = w;
      }
      colmaps.push_back(std::move(map));
    }

    actions.reserve(perms.size() * perms.size());
    for (const auto& sigma : perms) {
      for (std::size_t t = 0; t < perms.size(); ++t) {
        actions.push_back(Action{sigma, colmaps[t].data()});
      }
    }
  }

  std::uint32_t min_of_orbit(std::uint32_t v) const {
    const std::uint32_t nmask = (1u << n) - 1;
    std::array<std::uint32_t, 4> rows{};
    for (int i = 0; i < n; ++i) rows[i] = (v >> (n * i)) & nmask;
    std::uint32_t best = v;
    for (const Action& a : actions) {
      std::uint32_t w = 0;
      for (int i = 0; i < n; ++i) {
        w |= a.colmap[rows[a.src[i]]] << (n * i);
      }
      best = std::min(best, w);
    }
    return best;
  }
};

const ActionSet& action_set_for(int n) {
  static const std::array<ActionSet, 4> sets = {ActionSet(1), ActionSet(2),
                                                ActionSet(3), ActionSet(4)};
  return sets[n - 1];
}

bool bits_are_unit(std::uint64_t bits, int n) {
  const std::uint64_t nmask = (std::uint64_t(1) << n) - 1;
  std::uint64_t seen = 0;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t row = (bits >> (n * i)) & nmask;
    if (std::popcount(row) != 1) return false;
    seen |= row;
  }
  return seen == nmask;
}

std::vector<std::uint16_t> build_canonical_table(SetSize n, int workers) {
  const std::uint32_t size = static_cast<std::uint32_t>(relation_count(n));
  const ActionSet& acts = action_set_for(n.value());
  std::vector<std::uint16_t> canon(size);
  detail::run_chunked(0, size, workers, [&](int, std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t v = lo; v < hi; ++v) {
      canon[v] = static_cast<std::uint16_t>(acts.min_of_orbit(static_cast<std::uint32_t>(v)));
    }
  });
  return canon;
}

inline void set_bit(std::vector<std::uint64_t>& words, std::uint32_t pos) {
  words[pos >> 6] |= std::uint64_t(1) << (pos & 63);
}

inline bool get_bit(const std::vector<std::uint64_t>& words, std::uint32_t pos) {
  return (words[pos >> 6] >> (pos & 63)) & 1;
}

// Mark compose(a, b) for every non-unit a and every b in right_ops.
// One OR-combination table per right operand; each product costs n lookups.
std::vector<std::uint64_t> sweep_products(
    int n, std::uint32_t size,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& nonunit_runs,
    const std::vector<std::uint32_t>& right_ops, int workers) {
  const int w_count = detail::resolve_workers(workers);
  const std::uint32_t words = (size + 63) / 64;
  std::vector<std::vector<std::uint64_t>> sinks(
      w_count, std::vector<std::uint64_t>(words, 0));

  detail::run_chunked(0, right_ops.size(), w_count,
                      [&](int worker, std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t>& sink = sinks[worker];
    const std::uint32_t nmask = (1u << n) - 1;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      const std::uint32_t b = right_ops[idx];
      std::uint32_t tbl[16];
      tbl[0] = 0;
      for (std::uint32_t m = 1; m <= nmask; ++m) {
        const int low = std::countr_zero(m);
        tbl[m] = tbl[m & (m - 1)] | ((b >> (n * low)) & nmask);
      }
      if (n == 4) {
        for (const auto& [rlo, rhi] : nonunit_runs) {
          for (std::uint32_t a = rlo; a < rhi; ++a) {
            const std::uint32_t p = tbl[a & 15] | (tbl[(a >> 4) & 15] << 4) |
                                    (tbl[(a >> 8) & 15] << 8) |
                                    (tbl[a >> 12] << 12);
            sink[p >> 6] |= std::uint64_t(1) << (p & 63);
          }
        }
      } else {
        for (const auto& [rlo, rhi] : nonunit_runs) {
          for (std::uint32_t a = rlo; a < rhi; ++a) {
            std::uint32_t p = 0;
            for (int i = 0; i < n; ++i) {
              p |= tbl[(a >> (n * i)) & nmask] << (n * i);
            }
            sink[p >> 6] |= std::uint64_t(1) << (p & 63);
          }
        }
      }
    }
  });

  std::vector<std::uint64_t> merged(words, 0);
  for (const auto& sink : sinks) {
    for (std::uint32_t i = 0; i < words; ++i) merged[i] |= sink[i];
  }
  return merged;
}

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::unit: return "unit";
    case Status::reducible: return "reducible";
    case Status::irreducible: return "irreducible";
  }
  return "?";
}

std::uint64_t Classification::count(Status s) const {
  return static_cast<std::uint64_t>(std::count(status.begin(), status.end(), s));
}

bool operator==(const Classification& a, const Classification& b) {
  return a.n == b.n && a.status == b.status && a.canonical == b.canonical &&
         a.class_reps == b.class_reps;
}

Relation canonical(const Relation& r) {
  const int n = r.n();
  if (n <= 4) {
    return Relation(r.set_size(),
                    action_set_for(n).min_of_orbit(static_cast<std::uint32_t>(r.bits())));
  }
  // generic path for n in 5..8: walk S_n x S_n explicitly
  std::vector<std::array<std::uint8_t, 8>> perms;
  std::array<std::uint8_t, 8> p{};
  std::iota(p.begin(), p.begin() + n, 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.begin() + n));

  std::uint64_t best = r.bits();
  for (const auto& tau : perms) {
    std::array<std::uint8_t, 8> tinv{};
    for (int j = 0; j < n; ++j) tinv[tau[j]] = static_cast<std::uint8_t>(j);
    for (const auto& sigma : perms) {
      std::uint64_t w = 0;
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
          if ((r.bits() >> (n * sigma[i] + tinv[k])) & 1) {
            w |= std::uint64_t(1) << (n * i + k);
          }
        }
      }
      best = std::min(best, w);
    }
  }
  return Relation(r.set_size(), best);
}

bool are_associates(const Relation& r, const Relation& s) {
  if (r.n() != s.n()) {
    throw std::invalid_argument("are_associates: size mismatch");
  }
  return canonical(r) == canonical(s);
}

Classification classify_all(SetSize n, SieveMode mode, int workers) {
  if (n.value() > 4) {
    throw std::invalid_argument("classification is limited to n <= 4");
  }
  const std::uint32_t size = static_cast<std::uint32_t>(relation_count(n));

  std::vector<std::uint16_t> canon = build_canonical_table(n, workers);

  std::vector<std::uint8_t> unit_flag(size, 0);
  for (const Relation& u : units(n)) unit_flag[u.bits()] = 1;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> runs;
  for (std::uint32_t v = 0; v < size;) {
    if (unit_flag[v]) {
      ++v;
      continue;
    }
    const std::uint32_t lo = v;
    while (v < size && !unit_flag[v]) ++v;
    runs.emplace_back(lo, v);
  }

  std::vector<std::uint32_t> right_ops;
  if (mode == SieveMode::full_pairs) {
    right_ops.reserve(size);
    for (const auto& [lo, hi] : runs) {
      for (std::uint32_t v = lo; v < hi; ++v) right_ops.push_back(v);
    }
  } else {
    for (std::uint32_t v = 0; v < size; ++v) {
      if (!unit_flag[v] && canon[v] == v) right_ops.push_back(v);
    }
  }

  std::vector<std::uint64_t> marked =
      sweep_products(n.value(), size, runs, right_ops, workers);

  if (mode == SieveMode::symmetry_reduced) {
    // the reducible set is a union of associate orbits; close over them
    const std::uint32_t words = (size + 63) / 64;
    std::vector<std::uint64_t> repmark(words, 0);
    for (std::uint32_t v = 0; v < size; ++v) {
      if (get_bit(marked, v)) set_bit(repmark, canon[v]);
    }
    std::vector<std::uint64_t> closed(words, 0);
    for (std::uint32_t v = 0; v < size; ++v) {
      if (get_bit(repmark, canon[v])) set_bit(closed, v);
    }
    marked = std::move(closed);
  }

  Classification out{n, std::vector<Status>(size), std::move(canon), {}};
  for (std::uint32_t v = 0; v < size; ++v) {
    if (unit_flag[v]) {
      if (get_bit(marked, v)) {
        // cannot happen in a monoid: ab a unit forces a, b units
        throw std::logic_error("sieve: product of non-units marked a unit");
      }
      out.status[v] = Status::unit;
    } else {
      out.status[v] = get_bit(marked, v) ? Status::reducible : Status::irreducible;
    }
  }
  for (std::uint32_t v = 0; v < size; ++v) {
    if (out.status[v] == Status::irreducible && out.canonical[v] == v) {
      out.class_reps.push_back(static_cast<std::uint16_t>(v));
    }
  }
  return out;
}

std::optional<std::pair<Relation, Relation>> witness_pair(const Classification& c) {
  if (c.class_reps.size() < 2) return std::nullopt;
  return std::make_pair(Relation(c.n, c.class_reps[0]), Relation(c.n, c.class_reps[1]));
}

std::optional<std::pair<Relation, Relation>> find_nonunit_factorization(const Relation& p) {
  const int n = p.n();
  if (n > 4) {
    throw std::invalid_argument("factorization scan is limited to n <= 4");
  }
  const std::uint32_t size = static_cast<std::uint32_t>(relation_count(p.set_size()));
  const std::uint32_t nmask = (1u << n) - 1;
  const std::uint32_t target = static_cast<std::uint32_t>(p.bits());

  std::array<std::uint32_t, 4> prow{};
  for (int i = 0; i < n; ++i) prow[i] = static_cast<std::uint32_t>(p.row(i));

  const auto compose_with_rows = [&](std::uint32_t a,
                                     const std::array<std::uint32_t, 4>& brow) {
    std::uint32_t out = 0;
    for (int i = 0; i < n; ++i) {
      std::uint32_t m = (a >> (n * i)) & nmask;
      std::uint32_t acc = 0;
      while (m) {
        acc |= brow[std::countr_zero(m)];
        m &= m - 1;
      }
      out |= acc << (n * i);
    }
    return out;
  };

  for (std::uint32_t a = 0; a < size; ++a) {
    if (bits_are_unit(a, n)) continue;
    // residual a\p: the largest b with a.b <= p; a.b = p is solvable iff
    // the residual itself solves it
    std::array<std::uint32_t, 4> brow{};
    for (int j = 0; j < n; ++j) {
      std::uint32_t m = nmask;
      for (int i = 0; i < n; ++i) {
        if ((a >> (n * i + j)) & 1) m &= prow[i];
      }
      brow[j] = m;
    }
    if (compose_with_rows(a, brow) != target) continue;
    std::uint32_t bmax = 0;
    for (int j = 0; j < n; ++j) bmax |= brow[j] << (n * j);
    if (!bits_are_unit(bmax, n)) {
      return std::make_pair(Relation(p.set_size(), a), Relation(p.set_size(), bmax));
    }
    // bmax is a permutation; solutions below it are up-closed, so a smaller
    // solution exists iff one single-bit drop still works
    for (std::uint32_t m = bmax; m;) {
      const int bit = std::countr_zero(m);
      m &= m - 1;
      const std::uint32_t b2 = bmax & ~(std::uint32_t(1) << bit);
      std::array<std::uint32_t, 4> b2row{};
      for (int j = 0; j < n; ++j) b2row[j] = (b2 >> (n * j)) & nmask;
      if (compose_with_rows(a, b2row) == target) {
        return std::make_pair(Relation(p.set_size(), a), Relation(p.set_size(), b2));
      }
    }
  }
  return std::nullopt;
}

std::string to_csv(const Classification& c) {
  std::string out = "relation,status,canonical\n";
  const std::uint32_t size = static_cast<std::uint32_t>(c.status.size());
  for (std::uint32_t v = 0; v < size; ++v) {
    out += Relation(c.n, v).to_hex();
    out += ',';
    out += to_string(c.status[v]);
    out += ',';
    out += Relation(c.n, c.canonical[v]).to_hex();
    out += '\n';
  }
  return out;
}

}  // namespace relmon
