#include "relmon/cert.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <stdexcept>

#include "parallel.hpp"

namespace relmon {

namespace {

constexpr std::uint8_t kMul[4][4] = {
    // one, x, y, zero
    {0, 1, 2, 3},
    {1, 3, 3, 3},
    {2, 3, 3, 3},
    {3, 3, 3, 3},
};

bool bits_are_unit(std::uint32_t bits, int n) {
  const std::uint32_t nmask = (1u << n) - 1;
  std::uint32_t seen = 0;
  for (int i = 0; i < n; ++i) {
    const std::uint32_t row = (bits >> (n * i)) & nmask;
    if (std::popcount(row) != 1) return false;
    seen |= row;
  }
  return seen == nmask;
}

std::string hex_of(SetSize n, std::uint32_t v) { return Relation(n, v).to_hex(); }

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point start, bool measure) {
  if (!measure) return 0;
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)
      .count();
}

}  // namespace

HomImage target_mul(HomImage a, HomImage b) noexcept {
  return static_cast<HomImage>(
      kMul[static_cast<int>(a)][static_cast<int>(b)]);
}

const char* to_string(HomImage v) {
  switch (v) {
    case HomImage::one: return "one";
    case HomImage::x: return "x";
    case HomImage::y: return "y";
    case HomImage::zero: return "zero";
  }
  return "?";
}

HomTable build_hom(const Classification& c, const Relation& p, const Relation& q) {
  if (p.n() != c.n.value() || q.n() != c.n.value()) {
    throw std::invalid_argument("build_hom: witness size mismatch");
  }
  const auto sp = c.status[p.bits()];
  const auto sq = c.status[q.bits()];
  if (sp != Status::irreducible || sq != Status::irreducible) {
    throw std::invalid_argument("build_hom: witnesses must be irreducible");
  }
  const std::uint16_t cp = c.canonical[p.bits()];
  const std::uint16_t cq = c.canonical[q.bits()];
  if (cp == cq) {
    throw std::invalid_argument("build_hom: witnesses must not be associates");
  }
  HomTable t{c.n, std::vector<HomImage>(c.status.size(), HomImage::zero)};
  for (std::uint32_t v = 0; v < c.status.size(); ++v) {
    if (c.status[v] == Status::unit) {
      t.image[v] = HomImage::one;
    } else if (c.canonical[v] == cp) {
      t.image[v] = HomImage::x;
    } else if (c.canonical[v] == cq) {
      t.image[v] = HomImage::y;
    }
  }
  return t;
}

HomVerifyReport verify_hom_exhaustive(const HomTable& t, int workers) {
  const int n = t.n.value();
  if (n > 4) {
    throw std::invalid_argument("exhaustive verification is limited to n <= 4");
  }
  const std::uint32_t size = static_cast<std::uint32_t>(relation_count(t.n));
  if (t.image.size() != size) {
    throw std::invalid_argument("hom table has the wrong size");
  }
  std::vector<std::uint8_t> img(size);
  for (std::uint32_t v = 0; v < size; ++v) {
    img[v] = static_cast<std::uint8_t>(t.image[v]);
  }

  constexpr std::uint64_t kNone = ~std::uint64_t(0);
  std::atomic<std::uint64_t> best{kNone};

  detail::run_chunked(0, size, workers, [&](int, std::uint64_t lo, std::uint64_t hi) {
    const std::uint32_t nmask = (1u << n) - 1;
    for (std::uint64_t b = lo; b < hi; ++b) {
      // a counterexample before this right operand beats anything we can find
      if (best.load(std::memory_order_relaxed) < (b << 32)) return;
      std::uint32_t tbl[16];
      tbl[0] = 0;
      for (std::uint32_t m = 1; m <= nmask; ++m) {
        tbl[m] = tbl[m & (m - 1)] |
                 ((static_cast<std::uint32_t>(b) >> (n * std::countr_zero(m))) & nmask);
      }
      std::uint8_t expect[4];
      for (int ia = 0; ia < 4; ++ia) expect[ia] = kMul[ia][img[b]];

      std::uint32_t found = size;
      if (n == 4) {
        for (std::uint32_t a = 0; a < size; ++a) {
          const std::uint32_t p = tbl[a & 15] | (tbl[(a >> 4) & 15] << 4) |
                                  (tbl[(a >> 8) & 15] << 8) | (tbl[a >> 12] << 12);
          if (expect[img[a]] != img[p]) {
            found = a;
            break;
          }
        }
      } else {
        for (std::uint32_t a = 0; a < size; ++a) {
          std::uint32_t p = 0;
          for (int i = 0; i < n; ++i) p |= tbl[(a >> (n * i)) & nmask] << (n * i);
          if (expect[img[a]] != img[p]) {
            found = a;
            break;
          }
        }
      }
      if (found != size) {
        const std::uint64_t key = (b << 32) | found;
        std::uint64_t cur = best.load();
        while (key < cur && !best.compare_exchange_weak(cur, key)) {
        }
        return;  // later right operands in this chunk only give larger keys
      }
    }
  });

  HomVerifyReport rep;
  const std::uint64_t key = best.load();
  if (key == kNone) {
    rep.pass = true;
    rep.pairs_checked = std::uint64_t(size) * size;
  } else {
    const std::uint32_t b = static_cast<std::uint32_t>(key >> 32);
    const std::uint32_t a = static_cast<std::uint32_t>(key & 0xffffffffu);
    rep.pass = false;
    rep.pairs_checked = std::uint64_t(b) * size + a;
    rep.counterexample = std::make_pair(Relation(t.n, a), Relation(t.n, b));
  }
  return rep;
}

HomVerifyReport verify_hom_structured(const HomTable& t, const Classification& c) {
  if (t.n != c.n || t.image.size() != c.status.size()) {
    throw std::invalid_argument("hom table does not match the classification");
  }
  const int n = t.n.value();
  const std::uint32_t size = static_cast<std::uint32_t>(c.status.size());
  HomVerifyReport rep;

  // fact 1: image is one exactly on units and constant on associate classes
  FactReport f1{"units-to-one-and-class-constancy", true, ""};
  for (std::uint32_t v = 0; v < size && f1.pass; ++v) {
    const bool unit = bits_are_unit(v, n);
    if ((t.image[v] == HomImage::one) != unit) {
      f1.pass = false;
      f1.detail = "image(" + hex_of(t.n, v) + ")=" + to_string(t.image[v]) +
                  (unit ? " on a unit" : " on a non-unit");
    } else if (t.image[v] != t.image[c.canonical[v]]) {
      f1.pass = false;
      f1.detail = "image not constant on the class of " + hex_of(t.n, v);
    }
  }
  rep.facts.push_back(std::move(f1));

  // fact 2: {products of two non-units} = {reducible-labeled elements}.
  // Every such product is u.(a0 w b0).v for class representatives a0, b0,
  // a unit w, so marking canonical forms of the a0 w b0 and closing over
  // classes reconstructs the product set exactly.
  FactReport f2{"nonunit-products-are-the-reducibles", true, ""};
  {
    std::vector<std::uint32_t> reps;
    for (std::uint32_t v = 0; v < size; ++v) {
      if (c.canonical[v] == v && !bits_are_unit(v, n)) reps.push_back(v);
    }
    std::vector<std::uint32_t> lefts;  // {a0 . w}
    for (const Relation& w : units(t.n)) {
      const ComposeTable wt(w);
      for (std::uint32_t a0 : reps) {
        lefts.push_back(static_cast<std::uint32_t>(wt.apply_bits(a0)));
      }
    }
    std::sort(lefts.begin(), lefts.end());
    lefts.erase(std::unique(lefts.begin(), lefts.end()), lefts.end());

    std::vector<std::uint8_t> product_class(size, 0);
    const std::uint32_t nmask = (1u << n) - 1;
    for (std::uint32_t b0 : reps) {
      std::uint32_t tbl[16];
      tbl[0] = 0;
      for (std::uint32_t m = 1; m <= nmask; ++m) {
        tbl[m] = tbl[m & (m - 1)] | ((b0 >> (n * std::countr_zero(m))) & nmask);
      }
      for (std::uint32_t l : lefts) {
        std::uint32_t p = 0;
        for (int i = 0; i < n; ++i) p |= tbl[(l >> (n * i)) & nmask] << (n * i);
        product_class[c.canonical[p]] = 1;
      }
    }
    for (std::uint32_t v = 0; v < size && f2.pass; ++v) {
      const bool is_product = product_class[c.canonical[v]] != 0;
      const bool labeled = c.status[v] == Status::reducible;
      if (is_product != labeled) {
        f2.pass = false;
        f2.detail = hex_of(t.n, v) +
                    (is_product ? " is a product of two non-units but has status "
                                : " has no non-unit factorization but has status ") +
                    to_string(c.status[v]);
      }
    }
  }
  rep.facts.push_back(std::move(f2));

  // fact 3: reducibles map to zero
  FactReport f3{"reducibles-to-zero", true, ""};
  for (std::uint32_t v = 0; v < size && f3.pass; ++v) {
    if (c.status[v] == Status::reducible && t.image[v] != HomImage::zero) {
      f3.pass = false;
      f3.detail = "image(" + hex_of(t.n, v) + ")=" + to_string(t.image[v]) +
                  " on a reducible element";
    }
  }
  rep.facts.push_back(std::move(f3));

  rep.pass = std::all_of(rep.facts.begin(), rep.facts.end(),
                         [](const FactReport& f) { return f.pass; });
  return rep;
}

// ---- certificate document ----

bool Certificate::established() const {
  if (!witnesses.has_value() || checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckLine& c) { return c.pass; });
}

std::string Certificate::verdict() const {
  return established() ? "infinite representation type" : "hypothesis not established";
}

std::string Certificate::serialize() const {
  std::string out = "SUBJECT\n";
  for (const auto& [k, v] : subject) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  }
  out += "WITNESSES\n";
  if (witnesses) {
    out += "p=" + witnesses->first.to_hex() + '\n';
    out += "q=" + witnesses->second.to_hex() + '\n';
  } else {
    out += "none\n";
  }
  if (!localizer.empty()) {
    out += "LOCALIZER\n";
    for (const auto& [k, v] : localizer) {
      out += k;
      out += '=';
      out += v;
      out += '\n';
    }
  }
  out += "CHECKS\n";
  for (const CheckLine& c : checks) {
    out += c.name + " mode=" + c.mode + " result=" + (c.pass ? "pass" : "fail") +
           " elapsed_ms=" + std::to_string(c.elapsed_ms) + '\n';
  }
  out += "VERDICT\n";
  out += verdict();
  out += '\n';
  return out;
}

namespace {

// classify, pick witnesses, verify the homomorphism; shared by both subjects
void append_relation_checks(Certificate& cert, SetSize n, const CertifyOptions& opt) {
  auto start = Clock::now();
  const Classification c = classify_all(n, opt.sieve_mode, opt.workers);
  const std::uint64_t size = relation_count(n);
  const bool partition_ok =
      c.count(Status::unit) == units(n).size() &&
      c.count(Status::unit) + c.count(Status::reducible) +
              c.count(Status::irreducible) ==
          size;
  cert.checks.push_back({"classification", "exhaustive", partition_ok,
                         elapsed_ms(start, opt.measure_timings)});

  start = Clock::now();
  const auto wp = witness_pair(c);
  cert.checks.push_back({"witness-pair", "exhaustive", wp.has_value(),
                         elapsed_ms(start, opt.measure_timings)});
  if (!wp) return;
  cert.witnesses = wp;
  const Relation& p = wp->first;
  const Relation& q = wp->second;

  start = Clock::now();
  const bool witnesses_ok = !is_unit(p) && !is_unit(q) &&
                            !find_nonunit_factorization(p).has_value() &&
                            !find_nonunit_factorization(q).has_value() &&
                            !are_associates(p, q);
  cert.checks.push_back({"witness-irreducibility", "exhaustive", witnesses_ok,
                         elapsed_ms(start, opt.measure_timings)});
  if (!witnesses_ok) return;

  const HomTable t = build_hom(c, p, q);
  if (opt.mode != HomVerifyMode::exhaustive) {
    start = Clock::now();
    const HomVerifyReport r = verify_hom_structured(t, c);
    cert.checks.push_back({"hom-structured", "structured", r.pass,
                           elapsed_ms(start, opt.measure_timings)});
  }
  if (opt.mode != HomVerifyMode::structured) {
    start = Clock::now();
    const HomVerifyReport r = verify_hom_exhaustive(t, opt.workers);
    cert.checks.push_back({"hom-exhaustive", "exhaustive", r.pass,
                           elapsed_ms(start, opt.measure_timings)});
  }
}

std::string random_mode(std::uint64_t seed, std::uint64_t count) {
  return "random(" + std::to_string(seed) + "," + std::to_string(count) + ")";
}

}  // namespace

Certificate certify_relations(SetSize n, const CertifyOptions& opt) {
  Certificate cert;
  cert.subject.emplace_back("monoid", "B_" + std::to_string(n.value()));
  append_relation_checks(cert, n, opt);
  return cert;
}

Certificate certify_correspondences(std::shared_ptr<const Lattice> lattice,
                                    SetSize n, std::array<int, 4> window,
                                    int atom, const CertifyOptions& opt) {
  if (!lattice) throw std::invalid_argument("certify: lattice required");
  Certificate cert;
  cert.subject.emplace_back("monoid", "Lambda^{XxX}");
  cert.subject.emplace_back("n", std::to_string(n.value()));
  cert.subject.emplace_back("lattice", lattice->description().empty()
                                           ? "custom"
                                           : lattice->description());
  cert.subject.emplace_back("lattice-size", std::to_string(lattice->size()));
  if (lattice->size() == 2 && n.value() == 4) {
    cert.subject.emplace_back(
        "note", "two-element lattice: the subject monoid is isomorphic to B_4");
  }

  // re-run the axiom battery on the tables the object carries
  auto start = Clock::now();
  {
    const int m = lattice->size();
    std::vector<int> meet(m * m), join(m * m);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        meet[a * m + b] = lattice->meet_raw(a, b);
        join[a * m + b] = lattice->join_raw(a, b);
      }
    }
    const auto rechecked = Lattice::checked(m, std::move(meet), std::move(join));
    cert.checks.push_back({"lattice-axioms", "exhaustive",
                           std::holds_alternative<Lattice>(rechecked),
                           elapsed_ms(start, opt.measure_timings)});
  }

  if (atom < 0) {
    if (lattice->atoms().empty()) {
      throw std::invalid_argument("nontrivial lattice required");
    }
    atom = lattice->atoms().front();
  }
  const Localizer loc = make_localizer(lattice, n, window, atom);

  start = Clock::now();
  const bool idem = compose(loc.e, loc.e) == loc.e;
  cert.checks.push_back({"localizer-idempotent", "exhaustive", idem,
                         elapsed_ms(start, opt.measure_timings)});

  start = Clock::now();
  const IsoSuiteResult iso = run_iso_suite(loc, opt.seed, opt.iso_pairs);
  const auto iso_ms = elapsed_ms(start, opt.measure_timings);
  cert.checks.push_back({"iso-project-lift", "exhaustive",
                         iso.round_trip_failures == 0 && iso.lift_fixed_failures == 0,
                         iso_ms});
  cert.checks.push_back({"iso-lift-project", random_mode(opt.seed, iso.pairs),
                         iso.lift_project_failures == 0, 0});
  cert.checks.push_back({"iso-homomorphism", random_mode(opt.seed, iso.pairs),
                         iso.hom_failures == 0, 0});

  std::string window_text;
  for (int i = 0; i < 4; ++i) {
    if (i) window_text += ',';
    window_text += std::to_string(loc.window[i] + 1);  // 1-based in documents
  }
  cert.localizer.emplace_back("window", window_text);
  cert.localizer.emplace_back("atom", std::to_string(loc.atom));
  cert.localizer.emplace_back("bottom", std::to_string(lattice->bottom()));
  cert.localizer.emplace_back("e", loc.e.serialize());

  // the localized monoid is a verified copy of B_4; run the chain there
  append_relation_checks(cert, SetSize(4), opt);
  return cert;
}

}  // namespace relmon
