#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>
#include <string>

#include "admiq/rational.hpp"
#include "admiq/types.hpp"
#include "helpers.hpp"

using namespace admiq;
using admiq::testing::tri_instance;

namespace {

ErrorCode code_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& error) {
    return error.code();
  }
  FAIL("expected an Error");
  return ErrorCode::OracleFailure;
}

}  // namespace

TEST_CASE("rational parsing accepts integers, decimals and fractions") {
  CHECK(parse_rational("-12") == Rational(-12));
  CHECK(parse_rational("3.25") == Rational(13, 4));
  CHECK(parse_rational("7/2") == Rational(7, 2));
  CHECK(parse_rational("+4") == Rational(4));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("-0.5") == Rational(-1, 2));
}

TEST_CASE("rational parsing rejects junk") {
  for (const char* text : {"", "-", "1e5", " 1", "1 ", "1//2", "1/0", "1.2.3",
                           "abc", "0x10", "1/-2", "."}) {
    CAPTURE(text);
    CHECK(code_of([&] { parse_rational(text); }) == ErrorCode::ParseError);
  }
}

TEST_CASE("rational formatting is canonical and round-trips") {
  CHECK(format_rational(Rational(3)) == "3");
  CHECK(format_rational(Rational(-12)) == "-12");
  CHECK(format_rational(Rational(1, 8)) == "0.125");
  CHECK(format_rational(Rational(13, 4)) == "3.25");
  CHECK(format_rational(Rational(1, 3)) == "1/3");
  CHECK(format_rational(Rational(-7, 2)) == "-3.5");
  CHECK(format_rational(Rational(0)) == "0");
  CHECK(format_rational(Rational(100)) == "100");
  CHECK(format_rational(Rational(1, 10)) == "0.1");

  std::mt19937 rng(20240817);
  for (int i = 0; i < 500; ++i) {
    int num = testing::uniform_int(rng, -300, 300);
    int den = testing::uniform_int(rng, 1, 40);
    Rational value(num, den);
    CHECK(parse_rational(format_rational(value)) == value);
  }
}

TEST_CASE("extended weights are totally ordered with infinities at the ends") {
  const ExtendedWeight minus = ExtendedWeight::minus_infinity();
  const ExtendedWeight plus = ExtendedWeight::plus_infinity();
  const ExtendedWeight small(Rational(-1000000));
  const ExtendedWeight large(Rational(1000000));

  CHECK(minus < small);
  CHECK(small < large);
  CHECK(large < plus);
  CHECK(minus < plus);
  CHECK(!(plus < plus));
  CHECK(!(minus < minus));
  CHECK(plus == plus);
  CHECK(minus == minus);
  CHECK(-plus == minus);
  CHECK(-minus == plus);
  CHECK(-ExtendedWeight(Rational(3)) == ExtendedWeight(Rational(-3)));

  CHECK(min(minus, large) == minus);
  CHECK(max(small, plus) == plus);
  CHECK(format_extended(plus) == "+inf");
  CHECK(format_extended(minus) == "-inf");
  CHECK(format_extended(ExtendedWeight(Rational(7, 2))) == "3.5");
  CHECK(parse_extended("+inf") == plus);
  CHECK(parse_extended("-inf") == minus);
  CHECK(parse_extended("7/2") == ExtendedWeight(Rational(7, 2)));
}

TEST_CASE("validate_instance accepts the triangle fixture") {
  Instance inst = tri_instance();
  CHECK(inst.size() == 3);
  CHECK(inst.index_of("b") == 1);
  CHECK(inst.find("d") == std::nullopt);
  CHECK(code_of([&] { inst.index_of("d"); }) == ErrorCode::UnknownElement);
  REQUIRE(inst.graph() != nullptr);
  CHECK(inst.graph()->vertex_count == 3);
}

TEST_CASE("validate_instance rejects an inverted interval") {
  Instance inst = tri_instance();
  inst.intervals[1] = {4, 2};
  try {
    validate_instance(std::move(inst));
    FAIL("expected IntervalInverted");
  } catch (const Error& error) {
    CHECK(error.code() == ErrorCode::IntervalInverted);
    CHECK(error.element() == "b");
  }
}

TEST_CASE("validate_instance rejects a tree-matching family on a cycle") {
  Instance inst = tri_instance();
  TreeMatchingFamily fam;
  fam.graph = *inst.graph();
  inst.family = fam;
  CHECK(code_of([&] { validate_instance(std::move(inst)); }) ==
        ErrorCode::FamilyShapeMismatch);
}

TEST_CASE("validate_instance rejects structural defects") {
  SUBCASE("duplicate element id") {
    Instance inst = tri_instance();
    inst.elements[2] = "a";
    inst.index.clear();
    CHECK(code_of([&] { validate_instance(std::move(inst)); }) ==
          ErrorCode::DuplicateElement);
  }
  SUBCASE("endpoint out of range") {
    Instance inst = tri_instance();
    std::get<MstFamily>(inst.family).graph.edges[0].v = 9;
    CHECK(code_of([&] { validate_instance(std::move(inst)); }) ==
          ErrorCode::UnknownVertex);
  }
  SUBCASE("self loop") {
    Instance inst = tri_instance();
    std::get<MstFamily>(inst.family).graph.edges[0] = {1, 1};
    CHECK(code_of([&] { validate_instance(std::move(inst)); }) ==
          ErrorCode::FamilyShapeMismatch);
  }
  SUBCASE("interval count mismatch") {
    Instance inst = tri_instance();
    inst.intervals.pop_back();
    CHECK(code_of([&] { validate_instance(std::move(inst)); }) ==
          ErrorCode::FamilyShapeMismatch);
  }
  SUBCASE("uniform matroid size mismatch") {
    Instance inst = tri_instance();
    UniformMatroidFamily fam;
    fam.rank = 1;
    fam.size = 2;
    inst.family = fam;
    CHECK(code_of([&] { validate_instance(std::move(inst)); }) ==
          ErrorCode::FamilyShapeMismatch);
  }
  SUBCASE("st-path source equals target") {
    Instance inst = tri_instance();
    StPathFamily fam;
    fam.graph = *inst.graph();
    fam.source = 1;
    fam.target = 1;
    inst.family = fam;
    CHECK(code_of([&] { validate_instance(std::move(inst)); }) ==
          ErrorCode::SameVertex);
  }
  SUBCASE("bipartition violation") {
    Instance inst = tri_instance();
    BipartitePerfectMatchingFamily fam;
    fam.graph = *inst.graph();
    fam.left = {1, 0, 0};  // edge b = (1,2) stays inside the right side
    inst.family = fam;
    CHECK(code_of([&] { validate_instance(std::move(inst)); }) ==
          ErrorCode::FamilyShapeMismatch);
  }
}

TEST_CASE("objective negation flips intervals and is an involution") {
  Instance p4 = testing::p4_instance();
  Instance negated = negate_for_maximization(p4);
  CHECK(negated.objective == Objective::Min);
  CHECK(negated.intervals[0].lo == Rational(-2));
  CHECK(negated.intervals[0].hi == Rational(-1));
  CHECK(negated.intervals[1].lo == Rational(-6));
  CHECK(negated.intervals[1].hi == Rational(-2));
  CHECK(negated.costs == p4.costs);

  Instance back = negate_for_minimization(negated);
  CHECK(back.objective == Objective::Max);
  for (std::size_t i = 0; i < p4.size(); ++i) {
    CHECK(back.intervals[i].lo == p4.intervals[i].lo);
    CHECK(back.intervals[i].hi == p4.intervals[i].hi);
  }

  CHECK(code_of([&] { negate_for_maximization(negated); }) == ErrorCode::AlreadyMin);
  CHECK(code_of([&] { negate_for_minimization(p4); }) == ErrorCode::AlreadyMin);

  SUBCASE("degenerate interval is a fixed point") {
    Instance inst = tri_instance();
    inst.intervals[0] = {0, 0};
    inst.objective = Objective::Max;
    Instance min_form = negate_for_maximization(validate_instance(std::move(inst)));
    CHECK(min_form.intervals[0].lo == Rational(0));
    CHECK(min_form.intervals[0].hi == Rational(0));
  }
}

TEST_CASE("make_realization enforces interval bounds") {
  Instance inst = tri_instance();
  Realization ok = make_realization(inst, {Rational(1), Rational(3), Rational(4)});
  CHECK(ok.values[1] == Rational(3));
  CHECK(code_of([&] {
          make_realization(inst, {Rational(1), Rational(5), Rational(4)});
        }) == ErrorCode::InvalidRealization);
  CHECK(code_of([&] { make_realization(inst, {Rational(1), Rational(3)}); }) ==
        ErrorCode::InvalidRealization);
}

TEST_CASE("make_threshold_pair rejects an inverted pair") {
  ThresholdPair ok = make_threshold_pair(Rational(2), Rational(4));
  CHECK(ok.t_plus == ExtendedWeight(Rational(2)));
  CHECK(code_of([&] { make_threshold_pair(Rational(4), Rational(2)); }) ==
        ErrorCode::OracleFailure);
  ThresholdPair inf = make_threshold_pair(ExtendedWeight::plus_infinity(),
                                          ExtendedWeight::plus_infinity());
  CHECK(inf.t_minus.is_plus_infinity());
}

TEST_CASE("classify matches the color definitions") {
  const ThresholdPair mid = make_threshold_pair(Rational(2), Rational(4));
  CHECK(classify({3, 5}, mid) == ElementColor::Uncolored);
  CHECK(classify({1, 1}, mid) == ElementColor::Trivial);
  CHECK(classify({0, 1}, make_threshold_pair(ExtendedWeight::plus_infinity(),
                                             ExtendedWeight::plus_infinity())) ==
        ElementColor::Blue);
  CHECK(classify({0, 1}, make_threshold_pair(Rational(1), Rational(9))) ==
        ElementColor::Blue);
  CHECK(classify({9, 10}, make_threshold_pair(Rational(1), Rational(9))) ==
        ElementColor::Red);
  // Ties count as colored.
  CHECK(classify({0, 2}, make_threshold_pair(Rational(2), Rational(4))) ==
        ElementColor::Blue);
  CHECK(classify({4, 6}, make_threshold_pair(Rational(2), Rational(4))) ==
        ElementColor::Red);
  CHECK(classify({0, 1}, make_threshold_pair(ExtendedWeight::minus_infinity(),
                                             ExtendedWeight::minus_infinity())) ==
        ElementColor::Red);
}

TEST_CASE("no interval is ever both safely includable and excludable") {
  // Blue requires hi <= t_plus, red requires t_minus <= lo; with
  // t_plus <= t_minus and lo < hi both together would force hi < hi.
  const ExtendedWeight values[] = {ExtendedWeight::minus_infinity(),
                                   Rational(-2), Rational(0), Rational(2),
                                   ExtendedWeight::plus_infinity()};
  for (int lo = -3; lo <= 3; ++lo) {
    for (int hi = lo; hi <= 3; ++hi) {
      for (const auto& tp : values) {
        for (const auto& tm : values) {
          if (tm < tp) continue;
          UncertaintyInterval interval{lo, hi};
          const bool blue_side = ExtendedWeight(Rational(hi)) <= tp;
          const bool red_side = tm <= ExtendedWeight(Rational(lo));
          if (lo != hi) CHECK(!(blue_side && red_side));
          ElementColor color = classify(interval, make_threshold_pair(tp, tm));
          if (lo == hi) {
            CHECK(color == ElementColor::Trivial);
          } else if (blue_side) {
            CHECK(color == ElementColor::Blue);
          } else if (red_side) {
            CHECK(color == ElementColor::Red);
          } else {
            CHECK(color == ElementColor::Uncolored);
          }
        }
      }
    }
  }
}

TEST_CASE("color names are stable") {
  CHECK(std::string(to_string(ElementColor::Blue)) == "blue");
  CHECK(std::string(to_string(ElementColor::Red)) == "red");
  CHECK(std::string(to_string(ElementColor::Trivial)) == "trivial");
  CHECK(std::string(to_string(ElementColor::Uncolored)) == "uncolored");
}
