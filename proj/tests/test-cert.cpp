#include <catch2/catch_amalgamated.hpp>

#include <memory>

#include "relmon/cert.hpp"

using namespace relmon;

namespace {

const Classification& classification4() {
  static const Classification c =
      classify_all(SetSize(4), SieveMode::symmetry_reduced, 0);
  return c;
}

// units to one, everything else to zero; a valid homomorphism whenever the
// monoid has fewer than two irreducible classes
HomTable degenerate_table(const Classification& c) {
  HomTable t{c.n, std::vector<HomImage>(c.status.size(), HomImage::zero)};
  for (std::uint64_t v = 0; v < c.status.size(); ++v) {
    if (c.status[v] == Status::unit) t.image[v] = HomImage::one;
  }
  return t;
}

const FactReport& fact(const HomVerifyReport& r, const std::string& name) {
  for (const FactReport& f : r.facts) {
    if (f.name == name) return f;
  }
  FAIL("no fact named " << name);
  static FactReport dummy;
  return dummy;
}

}  // namespace

TEST_CASE("target multiplication", "[cert]") {
  REQUIRE(target_mul(HomImage::one, HomImage::x) == HomImage::x);
  REQUIRE(target_mul(HomImage::x, HomImage::one) == HomImage::x);
  REQUIRE(target_mul(HomImage::x, HomImage::x) == HomImage::zero);
  REQUIRE(target_mul(HomImage::x, HomImage::y) == HomImage::zero);
  REQUIRE(target_mul(HomImage::y, HomImage::x) == HomImage::zero);
  REQUIRE(target_mul(HomImage::y, HomImage::y) == HomImage::zero);
  REQUIRE(target_mul(HomImage::zero, HomImage::one) == HomImage::zero);
  REQUIRE(target_mul(HomImage::one, HomImage::one) == HomImage::one);

  const HomImage all[] = {HomImage::one, HomImage::x, HomImage::y, HomImage::zero};
  for (HomImage a : all) {
    REQUIRE(target_mul(HomImage::one, a) == a);
    REQUIRE(target_mul(a, HomImage::one) == a);
    REQUIRE(target_mul(HomImage::zero, a) == HomImage::zero);
    for (HomImage b : all) {
      for (HomImage c : all) {
        REQUIRE(target_mul(target_mul(a, b), c) == target_mul(a, target_mul(b, c)));
      }
    }
  }
}

TEST_CASE("hom table construction", "[cert]") {
  const Classification& c = classification4();
  const auto wp = witness_pair(c);
  REQUIRE(wp.has_value());
  const HomTable t = build_hom(c, wp->first, wp->second);

  REQUIRE(t.image[Relation::identity(SetSize(4)).bits()] == HomImage::one);
  REQUIRE(t.image[wp->first.bits()] == HomImage::x);
  REQUIRE(t.image[wp->second.bits()] == HomImage::y);
  REQUIRE(t.image[0] == HomImage::zero);  // the zero relation is reducible

  // images cover all four values and respect class sizes (96 and 96)
  std::uint64_t nx = 0, ny = 0;
  for (auto v : t.image) {
    nx += v == HomImage::x;
    ny += v == HomImage::y;
  }
  REQUIRE(nx == 96);
  REQUIRE(ny == 96);

  // well-definedness preconditions
  REQUIRE_THROWS_AS(build_hom(c, Relation::zero(SetSize(4)), wp->second),
                    std::invalid_argument);  // reducible witness
  REQUIRE_THROWS_AS(build_hom(c, wp->first, wp->first), std::invalid_argument);
  const Relation assoc =
      compose(compose(units(SetSize(4))[5], wp->first), units(SetSize(4))[17]);
  REQUIRE_THROWS_AS(build_hom(c, wp->first, assoc), std::invalid_argument);
}

TEST_CASE("degenerate tables verify at n=1 and n=2", "[cert]") {
  for (int n = 1; n <= 2; ++n) {
    const Classification c = classify_all(SetSize(n));
    const HomTable t = degenerate_table(c);
    const HomVerifyReport structured = verify_hom_structured(t, c);
    const HomVerifyReport exhaustive = verify_hom_exhaustive(t);
    REQUIRE(structured.pass);
    REQUIRE(structured.facts.size() == 3);
    REQUIRE(exhaustive.pass);
    REQUIRE(exhaustive.pairs_checked ==
            relation_count(SetSize(n)) * relation_count(SetSize(n)));
  }
}

TEST_CASE("structured verification at n=4", "[cert]") {
  const Classification& c = classification4();
  const auto wp = witness_pair(c);
  const HomTable t = build_hom(c, wp->first, wp->second);
  const HomVerifyReport r = verify_hom_structured(t, c);
  REQUIRE(r.pass);
  for (const FactReport& f : r.facts) {
    REQUIRE(f.pass);
    REQUIRE(f.detail.empty());
  }
}

TEST_CASE("mutations flip the verdict", "[cert]") {
  const Classification& c = classification4();
  const auto wp = witness_pair(c);
  const HomTable good = build_hom(c, wp->first, wp->second);

  SECTION("a unit remapped to zero fails fact 1 and the exhaustive scan") {
    HomTable bad = good;
    bad.image[Relation::identity(SetSize(4)).bits()] = HomImage::zero;
    const HomVerifyReport structured = verify_hom_structured(bad, c);
    REQUIRE(!structured.pass);
    REQUIRE(!fact(structured, "units-to-one-and-class-constancy").pass);

    const HomVerifyReport exhaustive = verify_hom_exhaustive(bad);
    REQUIRE(!exhaustive.pass);
    REQUIRE(exhaustive.counterexample.has_value());
    const auto [a, b] = *exhaustive.counterexample;
    REQUIRE(target_mul(bad.image[a.bits()], bad.image[b.bits()]) !=
            bad.image[compose(a, b).bits()]);
  }

  SECTION("a reducible class rep relabeled irreducible fails fact 2") {
    Classification bad = c;
    // the zero relation is its own class rep and is reducible
    REQUIRE(bad.status[0] == Status::reducible);
    bad.status[0] = Status::irreducible;
    const HomVerifyReport structured = verify_hom_structured(good, bad);
    REQUIRE(!structured.pass);
    REQUIRE(!fact(structured, "nonunit-products-are-the-reducibles").pass);
  }

  SECTION("a reducible mapped off zero fails fact 3") {
    HomTable bad = good;
    bad.image[0] = HomImage::x;  // the zero relation forms a singleton class
    const HomVerifyReport structured = verify_hom_structured(bad, c);
    REQUIRE(!structured.pass);
    REQUIRE(fact(structured, "units-to-one-and-class-constancy").pass);
    REQUIRE(!fact(structured, "reducibles-to-zero").pass);
  }
}

TEST_CASE("structured and exhaustive agree on corrupted tables at n=2", "[cert]") {
  const Classification c = classify_all(SetSize(2));
  HomTable bad = degenerate_table(c);
  bad.image[Relation::identity(SetSize(2)).bits()] = HomImage::zero;
  REQUIRE(!verify_hom_structured(bad, c).pass);
  REQUIRE(!verify_hom_exhaustive(bad).pass);
}

TEST_CASE("certificate serialization is exact and byte-stable", "[cert]") {
  Certificate cert;
  cert.subject.emplace_back("monoid", "B_4");
  cert.witnesses = std::make_pair(Relation::from_hex("4:16ac"), Relation::from_hex("4:359e"));
  cert.checks.push_back({"classification", "exhaustive", true, 0});
  cert.checks.push_back({"hom-structured", "structured", true, 0});
  cert.checks.push_back({"iso-homomorphism", "random(42,100000)", true, 0});

  const std::string expected =
      "SUBJECT\n"
      "monoid=B_4\n"
      "WITNESSES\n"
      "p=4:16ac\n"
      "q=4:359e\n"
      "CHECKS\n"
      "classification mode=exhaustive result=pass elapsed_ms=0\n"
      "hom-structured mode=structured result=pass elapsed_ms=0\n"
      "iso-homomorphism mode=random(42,100000) result=pass elapsed_ms=0\n"
      "VERDICT\n"
      "infinite representation type\n";
  REQUIRE(cert.serialize() == expected);
  REQUIRE(cert.serialize() == cert.serialize());
  REQUIRE(cert.established());

  // one failed check flips the verdict
  cert.checks[1].pass = false;
  REQUIRE(!cert.established());
  REQUIRE(cert.verdict() == "hypothesis not established");

  // no witnesses, no verdict
  Certificate empty;
  empty.checks.push_back({"classification", "exhaustive", true, 0});
  REQUIRE(!empty.established());
  REQUIRE(empty.serialize().find("WITNESSES\nnone\n") != std::string::npos);
}

TEST_CASE("relation pipeline at small n", "[cert]") {
  CertifyOptions opt;
  opt.mode = HomVerifyMode::both;

  const Certificate c1 = certify_relations(SetSize(1), opt);
  REQUIRE(!c1.established());
  REQUIRE(c1.verdict() == "hypothesis not established");
  REQUIRE(!c1.witnesses.has_value());

  const Certificate c2 = certify_relations(SetSize(2), opt);
  REQUIRE(!c2.established());

  // reruns serialize identically
  REQUIRE(certify_relations(SetSize(2), opt).serialize() == c2.serialize());
}

TEST_CASE("relation pipeline at n=4, structured route", "[cert]") {
  CertifyOptions opt;
  opt.mode = HomVerifyMode::structured;
  const Certificate cert = certify_relations(SetSize(4), opt);
  REQUIRE(cert.established());
  REQUIRE(cert.verdict() == "infinite representation type");
  REQUIRE(cert.witnesses->first.to_hex() == "4:16ac");
  REQUIRE(cert.witnesses->second.to_hex() == "4:359e");
  REQUIRE(cert.localizer.empty());
  bool saw_structured = false;
  for (const CheckLine& line : cert.checks) {
    REQUIRE(line.pass);
    if (line.name == "hom-structured") saw_structured = true;
    REQUIRE(line.name != "hom-exhaustive");
  }
  REQUIRE(saw_structured);
}

TEST_CASE("correspondence pipeline", "[cert]") {
  CertifyOptions opt;
  opt.mode = HomVerifyMode::structured;
  opt.iso_pairs = 2000;

  auto c3 = std::make_shared<Lattice>(build_chain(3));
  const Certificate cert =
      certify_correspondences(c3, SetSize(5), {0, 1, 2, 3}, -1, opt);
  REQUIRE(cert.established());
  REQUIRE(cert.witnesses->first.to_hex() == "4:16ac");

  bool saw_window = false, saw_e = false, saw_atom = false;
  for (const auto& [k, v] : cert.localizer) {
    if (k == "window") {
      saw_window = true;
      REQUIRE(v == "1,2,3,4");
    }
    if (k == "atom") {
      saw_atom = true;
      REQUIRE(v == "1");  // smallest atom of chain(3)
    }
    if (k == "e") {
      saw_e = true;
      REQUIRE(v == "5:1,0,0,0,0,0,1,0,0,0,0,0,1,0,0,0,0,0,1,0,0,0,0,0,0");
    }
  }
  REQUIRE((saw_window && saw_e && saw_atom));

  const std::string text = cert.serialize();
  REQUIRE(text.find("monoid=Lambda^{XxX}") != std::string::npos);
  REQUIRE(text.find("lattice=chain(3)") != std::string::npos);
  REQUIRE(text.find("iso-homomorphism mode=random(42,2000) result=pass") !=
          std::string::npos);
  REQUIRE(text.find("note=") == std::string::npos);

  // the two-element lattice at n=4 is flagged as plain B_4
  auto c2 = std::make_shared<Lattice>(build_chain(2));
  const Certificate flat = certify_correspondences(c2, SetSize(4), {0, 1, 2, 3}, -1, opt);
  REQUIRE(flat.established());
  REQUIRE(flat.serialize().find("note=two-element lattice") != std::string::npos);
}
