#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "dsg/notation.hpp"
#include "dsg/permutation.hpp"
#include "dsg/shape_table.hpp"
#include "reference_data.hpp"

using namespace dsg;

namespace {

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_images(images));
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

Permutation cyc(const char* text, int degree) { return Permutation::from_cycles(text, static_cast<std::size_t>(degree)); }

}  // namespace

TEST(Permutation, GroupLawsExhaustiveUpToFour) {
  for (int n = 1; n <= 4; ++n) {
    const auto all = all_permutations(n);
    const Permutation id(static_cast<std::size_t>(n));
    for (const auto& a : all) {
      EXPECT_EQ(compose(id, a), a);
      EXPECT_EQ(compose(a, id), a);
      EXPECT_TRUE(compose(a, a.inverse()).is_identity());
      EXPECT_TRUE(compose(a.inverse(), a).is_identity());
      for (const auto& b : all)
        for (const auto& c : all) EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
    }
  }
}

TEST(Permutation, GroupLawsRandomized) {
  std::mt19937 rng(20261018);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 5 + trial % 12;
    auto random_perm = [&] {
      std::vector<int> images(static_cast<std::size_t>(n));
      std::iota(images.begin(), images.end(), 1);
      std::shuffle(images.begin(), images.end(), rng);
      return Permutation::from_images(images);
    };
    const auto a = random_perm(), b = random_perm(), c = random_perm();
    EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
    EXPECT_TRUE(compose(a, a.inverse()).is_identity());
    EXPECT_EQ(a.inverse().inverse(), a);
    EXPECT_EQ(Permutation::from_cycles(a.cycles(), static_cast<std::size_t>(n)), a);
  }
}

TEST(Permutation, PathProductConvention) {
  EXPECT_EQ(compose(cyc("(23)", 4), cyc("(234)", 4)), cyc("(34)", 4));
  EXPECT_EQ(compose(cyc("(23)", 7), cyc("(234)", 7)), cyc("(34)", 7));
  EXPECT_TRUE(compose(cyc("(243)", 5), cyc("(234)", 5)).is_identity());
  EXPECT_EQ(compose(Permutation(4), cyc("(234)", 4)), cyc("(234)", 4));
}

TEST(Permutation, CycleNotation) {
  EXPECT_EQ(Permutation(3).cycles(), "()");
  EXPECT_EQ(cyc("(24)(35)", 6).cycles(), "(24)(35)");
  EXPECT_EQ(cyc("(354)", 5).cycles(), "(354)");
  EXPECT_EQ(cyc("(2 3 10)", 10).cycles(), "(2 3 10)");
  EXPECT_EQ(cyc("(25364)", 7).order(), 5u);
  EXPECT_EQ(cyc("(35)(46)", 7).order(), 2u);
}

TEST(Permutation, RejectsBadInput) {
  EXPECT_THROW(Permutation::from_images({1, 1, 3}), std::invalid_argument);
  EXPECT_THROW(Permutation::from_images({0, 1, 2}), std::invalid_argument);
  EXPECT_THROW(Permutation::from_images({1, 2, 4}), std::invalid_argument);
  EXPECT_THROW(Permutation::from_cycles("(15)", 4), std::invalid_argument);
  EXPECT_THROW(Permutation::from_cycles("(121)", 4), std::invalid_argument);
  EXPECT_THROW(compose(Permutation(3), Permutation(4)), std::invalid_argument);
}

TEST(Monomial, ActionOnPositions) {
  const Monomial m = parse_monomial("(a•b)∘(c•d)");
  const Monomial swapped = apply_permutation(cyc("(23)", 4), m);
  EXPECT_EQ(to_string(swapped), "(a•c)∘(b•d)");
  EXPECT_EQ(swapped.decoration.images(), (std::vector<int>{1, 3, 2, 4}));
  EXPECT_EQ(apply_permutation(Permutation(4), m), m);
  EXPECT_THROW(apply_permutation(Permutation(5), m), std::invalid_argument);
}

TEST(Monomial, ActionIsCompatibleWithCompositionExhaustive) {
  for (int n = 1; n <= 4; ++n) {
    const ShapeTable table(n);
    const auto perms = all_permutations(n);
    for (const auto& s : table.shapes())
      for (const auto& d : perms) {
        const Monomial m{s, d};
        for (const auto& sigma : perms) {
          EXPECT_EQ(apply_permutation(sigma, apply_permutation(sigma.inverse(), m)), m);
          for (const auto& tau : perms)
            EXPECT_EQ(apply_permutation(compose(sigma, tau), m), apply_permutation(tau, apply_permutation(sigma, m)));
        }
      }
  }
}

TEST(Schroeder, KnownValues) {
  const auto t = schroeder_large(10);
  ASSERT_EQ(t.size(), ref::schroeder.size());
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(t[i], ref::schroeder[i]) << "n = " << i + 1;
  EXPECT_EQ(schroeder_large(1), std::vector<std::uint64_t>{1});
}

TEST(Schroeder, OverflowIsDetected) {
  EXPECT_NO_THROW(schroeder_large(20));
  EXPECT_THROW(schroeder_large(60), std::overflow_error);
  EXPECT_THROW(schroeder_large(0), std::invalid_argument);
}

TEST(ShapeTable, SizesMatchSchroederNumbers) {
  const auto t = schroeder_large(10);
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(ShapeTable(n).size(), t[static_cast<std::size_t>(n - 1)]) << "n = " << n;
  EXPECT_THROW(ShapeTable(0), std::invalid_argument);
}

TEST(ShapeTable, DegreeOneIsTheLeaf) {
  const ShapeTable t(1);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_TRUE(t.at(1).is_leaf());
}

TEST(ShapeTable, OrderIsStrictAndTotalPairwise) {
  for (int n = 1; n <= 6; ++n) {
    const ShapeTable t(n);
    const auto& s = t.shapes();
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = 0; j < s.size(); ++j) ASSERT_EQ(compare_shapes(s[i], s[j]), i <=> j) << "n=" << n << " " << i << " " << j;
  }
}

TEST(ShapeTable, DegreeBreaksTiesFirst) {
  EXPECT_EQ(compare_shapes(ShapeTable(3).shapes().back(), ShapeTable(4).shapes().front()), std::strong_ordering::less);
  EXPECT_EQ(compare_shapes(Shape(leaf()), Shape(leaf())), std::strong_ordering::equal);
}

TEST(ShapeTable, EveryShapeAlternatesAndIndexesBack) {
  for (int n = 1; n <= 8; ++n) {
    const ShapeTable t(n);
    std::set<std::string> keys;
    for (std::size_t i = 1; i <= t.size(); ++i) {
      const Shape& s = t.at(static_cast<int>(i));
      EXPECT_TRUE(is_canonical(s.tree()));
      EXPECT_EQ(s.degree(), n);
      EXPECT_EQ(t.index_of(s), static_cast<int>(i));
      keys.insert(s.key());
    }
    EXPECT_EQ(keys.size(), t.size());
  }
}

TEST(ShapeTable, TransposeIsAnInvolutionOnEachDegree) {
  for (int n = 1; n <= 7; ++n) {
    const ShapeTable t(n);
    std::set<int> image;
    for (const auto& s : t.shapes()) {
      const Shape tr(transpose(s.tree()));
      EXPECT_EQ(Shape(transpose(tr.tree())), s);
      image.insert(t.index_of(tr));
    }
    EXPECT_EQ(image.size(), t.size());
  }
}

TEST(ShapeTable, DegreeFiveIndices) {
  const ShapeTable t(5);
  for (const auto& [index, text] : ref::degree5_types) {
    EXPECT_EQ(to_string(t.at(index)), text) << index;
    EXPECT_EQ(t.index_of(parse_shape(text)), index);
  }
  for (auto [a, b] : ref::degree5_transpose_pairs) EXPECT_EQ(t.index_of(Shape(transpose(t.at(a).tree()))), b);
}

TEST(ShapeTable, DegreeSixAndSevenIndices) {
  const ShapeTable six(6);
  for (const auto& [index, text] : ref::degree6_types) EXPECT_EQ(six.index_of(parse_shape(text)), index) << text;
  const ShapeTable seven(7);
  for (const auto& [index, text] : ref::degree7_types) EXPECT_EQ(seven.index_of(parse_shape(text)), index) << text;
}

TEST(ShapeTable, DegreeNineIndices) {
  const ShapeTable t(9);
  for (const auto& [index, text] : ref::degree9_types) EXPECT_EQ(t.index_of(parse_shape(text)), index) << text;
  for (const auto& row : ref::nontrivial_9) EXPECT_EQ(to_string(t.at(row.v_min)), row.t_min);
}

TEST(ShapeTable, LookupOutsideTheTableThrows) {
  const ShapeTable t(4);
  EXPECT_THROW(t.at(0), std::out_of_range);
  EXPECT_THROW(t.at(23), std::out_of_range);
  EXPECT_THROW(t.index_of(parse_shape("a∘b∘c")), std::out_of_range);
}

TEST(Notation, ParsesTheInterchangeSide) {
  const Monomial m = parse_monomial("(a•b)∘(c•d)", 4);
  EXPECT_EQ(ShapeTable(4).index_of(m.shape), 8);
  EXPECT_TRUE(m.decoration.is_identity());
}

TEST(Notation, FlattensAssociativeChains) {
  EXPECT_EQ(to_string(parse_term("(a∘(b∘c))∘d")), "a∘b∘c∘d");
  EXPECT_EQ(parse_term("(a∘(b∘c))∘d"), parse_term("a∘b∘c∘d"));
  EXPECT_EQ(to_string(parse_term("((a•b)•(c•d))")), "a•b•c•d");
}

TEST(Notation, AcceptsAsciiAndAlternativeGlyphs) {
  EXPECT_EQ(parse_term("(a*b)o(c*d)"), parse_term("(a•b)∘(c•d)"));
  EXPECT_EQ(parse_term("(a∙b)∘(c·d)"), parse_term("(a•b)∘(c•d)"));
  EXPECT_EQ(to_string(parse_term("(a•b)∘(c•d)"), Notation::ascii), "(a*b)o(c*d)");
  EXPECT_EQ(parse_term("i•ℓ"), parse_term("i•l"));
}

TEST(Notation, RoundTripsEveryShapeWithRandomDecorations) {
  std::mt19937 rng(7);
  for (int n = 1; n <= 6; ++n) {
    const ShapeTable t(n);
    for (const auto& s : t.shapes()) {
      std::vector<int> images(static_cast<std::size_t>(n));
      std::iota(images.begin(), images.end(), 1);
      std::shuffle(images.begin(), images.end(), rng);
      const Monomial m{s, Permutation::from_images(images)};
      EXPECT_EQ(parse_monomial(to_string(m), n), m);
      EXPECT_EQ(parse_monomial(to_string(m, Notation::ascii), n), m);
      EXPECT_EQ(to_string(parse_monomial(to_string(m))), to_string(m));
    }
  }
}

TEST(Notation, RejectsMalformedInput) {
  EXPECT_THROW(parse_term("(a∘b"), ParseError);
  EXPECT_THROW(parse_term("a∘b)"), ParseError);
  EXPECT_THROW(parse_term("a∘b•c"), ParseError);
  EXPECT_THROW(parse_term("a∘"), ParseError);
  EXPECT_THROW(parse_term(""), ParseError);
  EXPECT_THROW(parse_monomial("a∘a"), ParseError);
  EXPECT_THROW(parse_monomial("a∘c"), ParseError);
  EXPECT_THROW(parse_monomial("a∘b", 3), ParseError);
}

TEST(Notation, LetterOIsTheOperatorNotAVariable) {
  EXPECT_EQ(variable_name(14), "n");
  EXPECT_EQ(variable_name(15), "p");
  EXPECT_EQ(variable_index('o'), 0);
  EXPECT_EQ(parse_monomial("(a∘b∘c∘d)•(e∘f∘g∘h)•(i∘j∘k∘l)•(m∘n∘p∘q)").degree(), 16);
}
