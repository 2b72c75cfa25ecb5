#include <random>

#include "doctest.h"
#include "hvase/presentation.hpp"
#include "oracles.hpp"

using namespace hvase;

namespace {

Word random_word(std::mt19937& rng, int gens, std::size_t max_len) {
  std::uniform_int_distribution<int> g(1, gens), s(0, 1);
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  Word w(len(rng));
  for (auto& l : w) l = {GeneratorId{g(rng)}, s(rng) ? 1 : -1};
  return w;
}

std::vector<std::vector<BigInt>> to_rows(const IntegerMatrix& m) {
  std::vector<std::vector<BigInt>> rows(m.rows(), std::vector<BigInt>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c);
  }
  return rows;
}

FiniteGroupTable as_library_table(const oracle::Table& t, const std::string& name) {
  return FiniteGroupTable(name, t.order, t.mul);
}

}  // namespace

TEST_CASE("parse single relator a^3") {
  const auto p = parse_presentation("gens: a\nrel: a a a");
  CHECK(p.generator_count() == 1);
  REQUIRE(p.relators.size() == 1);
  CHECK(p.relators[0] == Word(3, Letter{GeneratorId{1}, 1}));
}

TEST_CASE("parse commutator with primes for inverses") {
  const auto p = parse_presentation("gens: a b\nrel: a b a' b'");
  const Word expected{{GeneratorId{1}, 1}, {GeneratorId{2}, 1}, {GeneratorId{1}, -1}, {GeneratorId{2}, -1}};
  CHECK(p.relators.at(0) == expected);
  CHECK(format_word(p.relators[0], p) == "a b a' b'");
}

TEST_CASE("comments, blank lines and order are preserved") {
  const auto p = parse_presentation("# free product\n\ngens: x y z  # three\nrel: z\n\nrel: x y\n");
  CHECK(p.names == std::vector<std::string>{"x", "y", "z"});
  REQUIRE(p.relators.size() == 2);
  CHECK(p.relators[0].at(0).gen.index == 3);
  CHECK(p.relators[1].size() == 2);
}

TEST_CASE("unknown generator reports line and column") {
  try {
    parse_presentation("gens: a\nrel: a c");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 8);
    CHECK(std::string(e.what()).find("unknown generator 'c'") != std::string::npos);
  }
}

TEST_CASE("malformed inputs are rejected") {
  CHECK_THROWS_AS(parse_presentation(""), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens:"), ParseError);
  CHECK_THROWS_AS(parse_presentation("rel: a\ngens: a"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a a"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a\ngens: b"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a-b"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a\nrel: '"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a\nrelator: a"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a\na a"), ParseError);
}

TEST_CASE("format and parse round trip") {
  std::mt19937 rng(7);
  const auto base = parse_presentation("gens: a b c");
  for (int trial = 0; trial < 50; ++trial) {
    Presentation p = base;
    for (int k = 0; k < 3; ++k) {
      Word w = random_word(rng, 3, 8);
      if (!w.empty()) p.relators.push_back(w);
    }
    std::string text = "gens: a b c\n";
    for (const auto& r : p.relators) text += "rel: " + format_word(r, p) + "\n";
    CHECK(parse_presentation(text) == p);
  }
}

TEST_CASE("free_reduce agrees with naive cancellation") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const Word w = random_word(rng, 3, 14);
    const Word r = free_reduce(w);
    CHECK(r == oracle::naive_reduce(w));
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
      CHECK_FALSE((r[i].gen == r[i + 1].gen && r[i].sign == -r[i + 1].sign));
    }
    CHECK(free_reduce(r) == r);
    Word ww = w;
    const Word inv = inverse(w);
    ww.insert(ww.end(), inv.begin(), inv.end());
    CHECK(free_reduce(ww).empty());
  }
}

TEST_CASE("relator matrix holds exponent sums") {
  const auto p = parse_presentation("gens: a b\nrel: a a b' a'\nrel: b b b");
  const auto m = relator_matrix(p);
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 2);
  CHECK(m(0, 0) == 1);
  CHECK(m(0, 1) == -1);
  CHECK(m(1, 0) == 0);
  CHECK(m(1, 1) == 3);
}

TEST_CASE("smith normal form matches determinantal divisors") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> entry(-6, 6), dim(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    IntegerMatrix m(static_cast<std::size_t>(dim(rng)), static_cast<std::size_t>(dim(rng)));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = entry(rng);
    }
    const auto d = smith_normal_form(m);
    CHECK(d == oracle::invariant_factors_by_minors(to_rows(m)));
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      if (d[i] != 0 && d[i + 1] != 0) CHECK(d[i + 1] % d[i] == 0);
      if (d[i] == 0) CHECK(d[i + 1] == 0);
    }
  }
}

TEST_CASE("smith normal form is invariant under unimodular row and column operations") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> entry(-5, 5), mult(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    IntegerMatrix m(3, 4);
    for (std::size_t r = 0; r < 3; ++r) {
      for (std::size_t c = 0; c < 4; ++c) m(r, c) = entry(rng);
    }
    const auto before = smith_normal_form(m);
    IntegerMatrix t = m;
    for (int op = 0; op < 8; ++op) {
      const std::size_t a = rng() % 3, b = rng() % 3, c = rng() % 4, e = rng() % 4;
      if (a != b) {
        const int k = mult(rng);
        for (std::size_t col = 0; col < 4; ++col) t(a, col) += k * t(b, col);
      }
      if (c != e) {
        const int k = mult(rng);
        for (std::size_t row = 0; row < 3; ++row) t(row, c) += k * t(row, e);
      }
      if (op % 3 == 0) {
        for (std::size_t col = 0; col < 4; ++col) t(a, col) = -t(a, col);
      }
    }
    CHECK(smith_normal_form(t) == before);
  }
}

TEST_CASE("smith normal form handles large entries exactly") {
  IntegerMatrix m(2, 2);
  m(0, 0) = BigInt("123456789012345678901234567890");
  m(0, 1) = 0;
  m(1, 0) = 0;
  m(1, 1) = BigInt("987654321098765432109876543210");
  CHECK(smith_normal_form(m) == oracle::invariant_factors_by_minors(to_rows(m)));
}

TEST_CASE("first homology of small presentations") {
  const auto cyclic3 = first_homology(parse_presentation("gens: a\nrel: a a a"));
  CHECK(cyclic3.free_rank == 0);
  CHECK(cyclic3.torsion == std::vector<BigInt>{3});

  const auto z2 = first_homology(parse_presentation("gens: a b\nrel: a b a' b'"));
  CHECK(z2.free_rank == 2);
  CHECK(z2.torsion.empty());

  // a^2 b^-3 abelianizes to Z.
  const auto trefoil = first_homology(parse_presentation("gens: a b\nrel: a a b' b' b'"));
  CHECK(trefoil.free_rank == 1);
  CHECK(trefoil.torsion.empty());

  const auto z2z4 = first_homology(parse_presentation("gens: a b\nrel: a a\nrel: b b b b"));
  CHECK(z2z4.free_rank == 0);
  CHECK(z2z4.torsion == std::vector<BigInt>{2, 4});
  CHECK(format_homology(z2z4) == "Z/2 + Z/4");

  CHECK(first_homology(free_presentation(3)).free_rank == 3);
}

TEST_CASE("library group tables are groups of the right order") {
  for (const auto& g : {cyclic_group(1), cyclic_group(2), cyclic_group(4), symmetric_group(3), dihedral_group(4)}) {
    CHECK(g.is_group());
  }
  CHECK(symmetric_group(3).order() == 6);
  CHECK(dihedral_group(4).order() == 8);
  CHECK_THROWS(FiniteGroupTable("bad", 2, {0, 0, 0, 0}));
}

TEST_CASE("hom counts: a^3 into S3 is 3 and Z^2 into S3 is 18") {
  const auto a3 = parse_presentation("gens: a\nrel: a a a");
  const auto z2 = parse_presentation("gens: a b\nrel: a b a' b'");
  CHECK(oracle::brute_force_homs(a3, oracle::s3()) == 3);
  CHECK(oracle::brute_force_homs(z2, oracle::s3()) == 18);
  CHECK(count_homomorphisms(a3, symmetric_group(3)) == 3);
  CHECK(count_homomorphisms(z2, symmetric_group(3)) == 18);
}

TEST_CASE("hom counts agree with brute force on random presentations") {
  std::mt19937 rng(17);
  const std::vector<std::pair<oracle::Table, FiniteGroupTable>> groups = {
      {oracle::s3(), symmetric_group(3)},
      {oracle::cyclic(2), cyclic_group(2)},
      {oracle::cyclic(4), cyclic_group(4)},
      {oracle::d4(), dihedral_group(4)},
  };
  for (int trial = 0; trial < 60; ++trial) {
    Presentation p = free_presentation(1 + static_cast<int>(rng() % 3));
    const std::size_t rels = rng() % 3;
    for (std::size_t k = 0; k < rels; ++k) p.relators.push_back(random_word(rng, p.generator_count(), 7));
    for (const auto& [oracle_table, table] : groups) {
      CHECK(count_homomorphisms(p, table) == oracle::brute_force_homs(p, oracle_table));
    }
  }
}

TEST_CASE("hom counts are invariant under the oracle's own relabelling of elements") {
  // D4 built by permutation closure has a different element order than the library's.
  const auto p = parse_presentation("gens: a b\nrel: a a\nrel: b b b b");
  CHECK(count_homomorphisms(p, as_library_table(oracle::d4(), "D4'")) == count_homomorphisms(p, dihedral_group(4)));
}

TEST_CASE("hom count enumeration budget is enforced") {
  const auto p = free_presentation(8);
  CHECK_THROWS_AS(count_homomorphisms(p, symmetric_group(3), 1000), EnumerationBudgetError);
}

TEST_CASE("truncation and generator restriction") {
  const auto p = parse_presentation("gens: a b c\nrel: a a\nrel: b c\nrel: c c c");
  const auto t = truncate_presentation(p, 2);
  CHECK(t.relators.size() == 2);
  CHECK(t.generator_count() == 3);
  CHECK_THROWS_AS(truncate_presentation(p, 4), std::out_of_range);
  const auto r = restrict_generators(truncate_presentation(p, 1), 1);
  CHECK(r.generator_count() == 1);
  CHECK(r.relators.size() == 1);
  CHECK_THROWS_AS(restrict_generators(p, 1), std::invalid_argument);
}
