#include "support.hpp"

#include <gtest/gtest.h>

using namespace corners;
using namespace corners::testing;

namespace {

const std::set<Label> kH123 = labels({"h1", "h2", "h3"});

Fan fan_of(std::initializer_list<std::initializer_list<const char*>> cones) {
  std::set<Cone> cs;
  for (auto c : cones) cs.insert(cone(c));
  return Fan(kH123, cs);
}

Fan fan_b() {
  return fan_of({{"h1+h2+h3", "h2", "h3"}, {"h1", "h1+h2+h3", "h3"}, {"h1", "h2", "h1+h2+h3"}});
}
Fan fan_c() { return fan_of({{"h1", "h2+h3", "h2"}, {"h1", "h2+h3", "h3"}}); }
Fan fan_d() {
  return fan_of({{"h1+h2+h3", "h2+h3", "h2"},
                     {"h1+h2+h3", "h2+h3", "h3"},
                     {"h1", "h1+h2+h3", "h3"},
                     {"h1", "h2", "h1+h2+h3"}});
}

}  // namespace

TEST(MonoidVector, ArithmeticAndPrinting) {
  auto v = vec("h1+2*h2-h3");
  EXPECT_EQ(v["h2"], 2);
  EXPECT_EQ(v["h3"], -1);
  EXPECT_EQ(v.str(), "h1+2*h2-h3");
  EXPECT_TRUE((v - v).is_zero());
  EXPECT_EQ((v - v).str(), "0");
  EXPECT_EQ(pairing(vec("h1-h2"), vec("h1+h2+h3")), 0);
}

TEST(ConeMembership, Examples) {
  auto c = cone({"a", "a+b"});
  auto x = cone_membership(c, vec("2*a+b"));
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (std::vector<Rational>{1, 1}));
  EXPECT_FALSE(cone_membership(c, vec("b")));
  EXPECT_FALSE(cone_membership(cone({"h1+h2+h3", "h2", "h3"}), vec("h1")));
  EXPECT_THROW(cone_membership(c, vec("z")), InputError);
}

TEST(ConeMembership, RecombinationIsExact) {
  const Fan d = fan_d();
  for_each_small_vector(kH123, 6, [&](const MonoidVector& v) {
    for (const auto& c : d.max_cones()) {
      auto x = cone_membership(c, v, kH123);
      if (!x) continue;
      MonoidVector back;
      for (std::size_t i = 0; i < x->size(); ++i) back += to_integer((*x)[i]) * c.generators()[i];
      EXPECT_EQ(back, v);
    }
  });
}

TEST(StarSubdivide, ThreeChainFans) {
  const Fan a = Fan::orthant(kH123);
  EXPECT_EQ(star_subdivide(a, cone({"h1", "h2", "h3"})), fan_b());
  EXPECT_EQ(star_subdivide(a, cone({"h2", "h3"})), fan_c());
  EXPECT_EQ(star_subdivide(fan_b(), cone({"h2", "h3"})), fan_d());
  // Opposite order: after blowing up h2,h3 the center h1,h2,h3 is no longer
  // a cone; the admissible second step is <h1, h2+h3>.
  EXPECT_THROW(star_subdivide(fan_c(), cone({"h1", "h2", "h3"})), DomainError);
  EXPECT_EQ(star_subdivide(fan_c(), cone({"h1", "h2+h3"})), fan_d());
}

TEST(StarSubdivide, OneGeneratorCenterIsIdentity) {
  const Fan a = Fan::orthant(kH123);
  EXPECT_EQ(star_subdivide(a, cone({"h1"})), a);
}

TEST(Fan, ThreeChainFansAreValid) {
  for (const auto& f : {Fan::orthant(kH123), fan_b(), fan_c(), fan_d()})
    EXPECT_TRUE(f.violations().empty());
}

TEST(Fan, ViolationsDetectBadFans) {
  // Missing cone: coverage fails.
  Fan holey(kH123, {cone({"h1", "h2+h3", "h2"})});
  EXPECT_FALSE(holey.violations().empty());
  // Overlapping cones.
  Fan overlap(labels({"a", "b"}), {cone({"a", "b"}), cone({"a", "a+b"})});
  EXPECT_FALSE(overlap.violations().empty());
  // Non-unimodular.
  Fan fat(labels({"a", "b"}), {cone({"a", "a+2*b"}), cone({"a+2*b", "b"})});
  EXPECT_FALSE(fat.violations().empty());
}

TEST(Fan, RandomSubdivisionsStayValid) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    std::set<Label> amb;
    const int dim = 2 + trial % 3;
    for (int i = 0; i < dim; ++i) amb.insert("e" + std::to_string(i));
    Fan f = Fan::orthant(amb);
    for (int step = 0; step < 3; ++step) {
      auto all = f.all_cones();
      std::vector<Cone> centers;
      for (const auto& c : all)
        if (c.dimension() >= 2) centers.push_back(c);
      f = star_subdivide(f, centers[rng() % centers.size()]);
      ASSERT_TRUE(f.violations().empty()) << "trial " << trial;
    }
  }
}

TEST(FunctionalSign, Examples) {
  using K = SignVerdict::Kind;
  auto s = functional_sign(cone({"h1", "h2", "h1+h2+h3"}), vec("h1-h2"));
  EXPECT_EQ(s.kind, K::Indeterminate);
  s = functional_sign(cone({"h1", "h2+h3", "h2"}), vec("h2-h3"));
  EXPECT_EQ(s.kind, K::NonNegative);
  EXPECT_EQ(s.positive, std::vector<MonoidVector>{vec("h2")});
  EXPECT_TRUE(s.negative.empty());
  EXPECT_EQ(functional_sign(cone({"h1", "h2"}), MonoidVector{}).kind, K::Zero);
  EXPECT_EQ(functional_sign(cone({"h1", "h2"}), vec("-h1")).kind, K::NonPositive);
}

TEST(KernelFaceCheck, Examples) {
  const std::vector<MonoidVector> fs{vec("h1-h2"), vec("h1-h3")};
  EXPECT_TRUE(kernel_face_check(cone({"h1", "h2", "h1+h2+h3"}), fs));
  EXPECT_FALSE(kernel_face_check(cone({"h1", "h2+h3", "h2"}), fs));
  EXPECT_TRUE(kernel_face_check(cone({"h1", "h2+h3", "h2"}), {}));
  EXPECT_FALSE(kernel_face_check(cone({"h1", "h2", "h3"}), fs));
}

TEST(KernelFaceCheck, AgreesWithBasicSolutionOracle) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> coef(-2, 2);
  const Fan d = fan_d();
  std::vector<Fan> fans{Fan::orthant(kH123), fan_b(), fan_c(), d,
                        star_subdivide(d, cone({"h1", "h1+h2+h3"}))};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<MonoidVector> fs;
    const int k = 1 + trial % 3;
    for (int j = 0; j < k; ++j)
      fs.push_back(MonoidVector({{"h1", coef(rng)}, {"h2", coef(rng)}, {"h3", coef(rng)}}));
    for (const auto& f : fans)
      for (const auto& c : f.max_cones()) ASSERT_EQ(kernel_face_check(c, fs), kernel_face_oracle(c, fs));
  }
}

TEST(KernelFaceCheck, ZeroSignImpliesKernelFace) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coef(-3, 3);
  const Fan d = fan_d();
  for (int trial = 0; trial < 200; ++trial) {
    MonoidVector f({{"h1", coef(rng)}, {"h2", coef(rng)}, {"h3", coef(rng)}});
    for (const auto& c : d.max_cones()) {
      if (functional_sign(c, f).kind == SignVerdict::Kind::Zero) {
        EXPECT_TRUE(kernel_face_check(c, {f}));
      }
    }
  }
}

TEST(FansEqual, SetSemantics) {
  EXPECT_FALSE(fans_equal(Fan::orthant(kH123), fan_b()));
  EXPECT_TRUE(fans_equal(fan_d(), fan_of({{"h1", "h2", "h1+h2+h3"},
                                                  {"h1+h2+h3", "h2+h3", "h3"},
                                                  {"h1", "h1+h2+h3", "h3"},
                                                  {"h2", "h2+h3", "h1+h2+h3"}})));
}

TEST(LinearAlgebra, DeterminantAndNullspace) {
  EXPECT_EQ(determinant({{2, 1}, {1, 1}}), 1);
  EXPECT_EQ(determinant({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}), -1);
  EXPECT_EQ(determinant({{1, 2}, {2, 4}}), 0);
  RationalMatrix m{{1, 1, 0}};
  auto ns = nullspace(m, 3);
  ASSERT_EQ(ns.size(), 2u);
  for (const auto& v : ns) EXPECT_EQ(v[0] + v[1], 0);
}

TEST(FourierMotzkin, SmallSystems) {
  LinearSystem s;
  s.vars = 2;
  s.add_le({1, 0}, 1);
  s.add_le({-1, 0}, -2);  // x >= 2 and x <= 1
  EXPECT_FALSE(feasible(s));
  LinearSystem t;
  t.vars = 2;
  t.add_eq({1, 1}, 1);
  t.add_le({-1, 0}, 0);
  t.add_le({0, -1}, 0);
  EXPECT_TRUE(feasible(t));
}
