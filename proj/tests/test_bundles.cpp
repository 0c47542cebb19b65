#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "whelix/bundles.hpp"

using namespace whelix;

namespace {

BrauerClass hamilton() {
  return BrauerClass::from_quaternion(QuaternionSymbol(Rat(-1), Rat(-1)));
}

BrauerClass q_minus1_3() {
  return BrauerClass::from_quaternion(QuaternionSymbol(Rat(-1), Rat(3)));
}

VarietyModel conic() {
  return VarietyModel(std::vector<Factor>{Factor{1, hamilton()}});
}

VarietyModel p2() {
  return VarietyModel(std::vector<Factor>{Factor{2, BrauerClass::zero()}});
}

VarietyModel p1p1() {
  return VarietyModel(std::vector<Factor>{Factor{1}, Factor{1}});
}

MultiDegree deg(std::vector<long long> parts) {
  return MultiDegree(std::move(parts));
}

FormalBundle line(const VarietyModel& X, std::vector<long long> parts,
                  long long mult = 1) {
  return FormalBundle::single(
      Summand(MultiDegree(std::move(parts)), BrauerClass::zero()), mult);
}

}  // namespace

TEST_CASE("summand dual and shift") {
  Summand w1(deg({1}), hamilton());
  CHECK(w1.rank_multiplier() == 2);
  CHECK(w1.dual().degree() == deg({-1}));
  CHECK(w1.dual().end_class() == hamilton());
  CHECK(w1.shifted(deg({2})).degree() == deg({3}));
  CHECK(w1.shifted(deg({2})).end_class() == hamilton());
}

TEST_CASE("formal bundles are canonical sorted multisets") {
  Summand a(deg({0}), BrauerClass::zero());
  Summand b(deg({1}), BrauerClass::zero());
  FormalBundle left = FormalBundle::single(a).direct_sum(
      FormalBundle::single(b, 2));
  FormalBundle right = FormalBundle(
      {{b, 1}, {a, 1}, {b, 1}});
  CHECK(left == right);
  CHECK(left.split_rank() == 3);
  CHECK(left.split_degree_counts().at(deg({1})) == 2);
  CHECK_THROWS_AS(FormalBundle({{a, 0}}), validation_error);
  CHECK(FormalBundle().empty());
}

TEST_CASE("indecomposables on the quaternionic curve satisfy the twist "
          "closure") {
  VarietyModel X = conic();
  for (long long i = -6; i <= 6; ++i) {
    FormalBundle wi = as_bundle(X, deg({i}));
    CAPTURE(i);
    CHECK(wi.dual() == as_bundle(X, deg({-i})));
    CHECK(twist_by(X, wi, deg({2})) == as_bundle(X, deg({i + 2})));
    long long expected_rank = (i % 2 == 0) ? 1 : 2;
    CHECK(wi.split_rank() == expected_rank);
  }
}

TEST_CASE("twist by a nonexistent line bundle is rejected") {
  VarietyModel X = conic();
  CHECK_THROWS_AS(twist_by(X, as_bundle(X, deg({0})), deg({1})),
                  validation_error);
  CHECK_NOTHROW(twist_by(X, as_bundle(X, deg({1})), deg({-4})));
}

TEST_CASE("defined_over_base distinguishes honest bundles from split data") {
  VarietyModel X = conic();
  CHECK(defined_over_base(X, as_bundle(X, deg({1}))));
  CHECK(defined_over_base(X, as_bundle(X, deg({2}))));
  CHECK_FALSE(defined_over_base(X, line(X, {1})));  // forced class is nonsplit
  CHECK(defined_over_base(p2(), line(p2(), {1})));
}

TEST_CASE("ext dimensions on projective space") {
  VarietyModel X = p2();
  CHECK(ext_dims(X, line(X, {0}), line(X, {1})) ==
        std::vector<long long>({3, 0, 0}));
  CHECK(ext_dims(X, line(X, {1}), line(X, {0})) ==
        std::vector<long long>({0, 0, 0}));
  CHECK(ext_dims(X, line(X, {0}), line(X, {-3})) ==
        std::vector<long long>({0, 0, 1}));
}

TEST_CASE("ext dimensions scale by split ranks") {
  VarietyModel X = conic();
  FormalBundle w1 = as_bundle(X, deg({1}));
  CHECK(ext_dims(X, w1, w1) == std::vector<long long>({4, 0}));
  CHECK(ext_dims(X, as_bundle(X, deg({0})), w1) ==
        std::vector<long long>({4, 0}));
  FormalBundle w1_twice = FormalBundle::single(Summand(deg({1}), hamilton()), 2);
  CHECK(ext_dims(X, w1_twice, w1_twice) == std::vector<long long>({16, 0}));
}

TEST_CASE("end algebra blocks and radical flag") {
  VarietyModel X = p2();
  EndAlgebraDescription ed = end_algebra(X, line(X, {0}, 2));
  REQUIRE(ed.blocks.size() == 1);
  CHECK(ed.blocks[0].first == 2);
  CHECK(ed.blocks[0].second.is_split());
  CHECK_FALSE(ed.has_radical);

  EndAlgebraDescription mixed =
      end_algebra(X, line(X, {0}).direct_sum(line(X, {1})));
  CHECK(mixed.blocks.size() == 2);
  CHECK(mixed.has_radical);

  VarietyModel C = conic();
  EndAlgebraDescription quat = end_algebra(C, as_bundle(C, deg({1})));
  REQUIRE(quat.blocks.size() == 1);
  CHECK(quat.blocks[0].first == 1);
  CHECK(quat.blocks[0].second == hamilton());
  CHECK_FALSE(quat.has_radical);
}

TEST_CASE("rigidity") {
  VarietyModel X = p2();
  CHECK(is_rigid(X, line(X, {0}).direct_sum(line(X, {1}))));
  VarietyModel P1 = VarietyModel(std::vector<Factor>{Factor{1}});
  CHECK_FALSE(is_rigid(P1, line(P1, {0}).direct_sum(line(P1, {2}))));
}

TEST_CASE("exceptionality classification") {
  VarietyModel X = p2();
  CHECK(classify_exceptionality(X, line(X, {0})) == ExcClass::exceptional);
  CHECK(classify_exceptionality(X, line(X, {0}, 3)) ==
        ExcClass::separable_exceptional);
  CHECK(classify_exceptionality(X, line(X, {0}).direct_sum(line(X, {1}))) ==
        ExcClass::none);  // radical: Hom(O, O(1)) != 0

  VarietyModel C = conic();
  CHECK(classify_exceptionality(C, as_bundle(C, deg({1}))) ==
        ExcClass::weak_exceptional);
  CHECK(classify_exceptionality(C, as_bundle(C, deg({0}))) ==
        ExcClass::exceptional);

  VarietyModel P1 = VarietyModel(std::vector<Factor>{Factor{1}});
  CHECK(classify_exceptionality(P1, line(P1, {0}).direct_sum(line(P1, {2}))) ==
        ExcClass::none);  // higher self-Ext

  CHECK(to_string(ExcClass::weak_exceptional) == "weak_exceptional");
}

TEST_CASE("split semisimple block predicate") {
  VarietyModel X = p1p1();
  CHECK(is_split_semisimple_block(X, {line(X, {1, 0})}));
  CHECK(is_split_semisimple_block(X, {line(X, {1, 0}), line(X, {0, 1})}));
  CHECK(is_split_semisimple_block(
      X, {line(X, {1, 0}, 3), line(X, {0, 1}, 2)}));  // multiplicities ignored

  BlockCheck cross = check_split_semisimple_block(
      X, {line(X, {0, 0}), line(X, {1, 0})});
  CHECK_FALSE(cross.ok);
  CHECK(cross.failure == "cross_hom");
  CHECK(cross.witness["dim"] == 2);

  // No Hom in either direction, but Ext^1(O(0,0), O(-2,1)) = 2.
  BlockCheck higher = check_split_semisimple_block(
      X, {line(X, {0, 0}), line(X, {-2, 1})});
  CHECK_FALSE(higher.ok);
  CHECK(higher.failure == "higher_ext");
  CHECK(higher.witness["r"] == 1);

  VarietyModel C = conic();
  BlockCheck nonsplit = check_split_semisimple_block(C, {as_bundle(C, deg({1}))});
  CHECK_FALSE(nonsplit.ok);
  CHECK(nonsplit.failure == "nonsplit_end");
}

TEST_CASE("box product splits by index arithmetic") {
  VarietyModel mixed(std::vector<Factor>{Factor{1, hamilton()},
                                         Factor{1, q_minus1_3()}});
  FormalBundle box = box_product(mixed, deg({1, 1}));
  REQUIRE(box.parts().size() == 1);
  const auto& [summand, mult] = *box.parts().begin();
  CHECK(summand.degree() == deg({1, 1}));
  CHECK(summand.end_class() == hamilton().tensor(q_minus1_3()));
  CHECK(summand.rank_multiplier() == 2);
  CHECK(mult == 2);  // 2*2 split lines over an index-2 class
  CHECK(box.split_rank() == 4);

  VarietyModel equal(std::vector<Factor>{Factor{1, hamilton()},
                                         Factor{1, hamilton()}});
  FormalBundle square = box_product(equal, deg({1, 1}));
  REQUIRE(square.parts().size() == 1);
  CHECK(square.parts().begin()->first.end_class().is_split());
  CHECK(square.parts().begin()->second == 4);  // O(1,1) four times
  CHECK(classify_exceptionality(equal, square) ==
        ExcClass::separable_exceptional);

  FormalBundle mixed_box = box_product(mixed, deg({1, 0}));
  CHECK(mixed_box == as_bundle(mixed, deg({1, 0})));
}

TEST_CASE("collections: the standard line-bundle sequence") {
  VarietyModel X = p2();
  CollectionOptions opts;
  opts.require_strong = true;
  opts.require_full = true;
  CheckReport good =
      check_collection(X, {line(X, {0}), line(X, {1}), line(X, {2})}, opts);
  CHECK(good.passed);
  CHECK(good.details["fullness"]["ok"] == true);

  CheckReport reversed =
      check_collection(X, {line(X, {2}), line(X, {1}), line(X, {0})}, opts);
  CHECK_FALSE(reversed.passed);
  REQUIRE(!reversed.details["semiorthogonality_failures"].empty());
  Json witness = reversed.details["semiorthogonality_failures"][0];
  CHECK(witness["r"] == 0);
  CHECK(witness["dim"] == 3);
}

TEST_CASE("collections: strictness gate") {
  VarietyModel C = conic();
  std::vector<FormalBundle> pair = {as_bundle(C, deg({0})),
                                    as_bundle(C, deg({1}))};
  CollectionOptions weak;
  CHECK(check_collection(C, pair, weak).passed);

  CollectionOptions sep;
  sep.strictness = Strictness::separable;
  CHECK(check_collection(C, pair, sep).passed);

  // A matrix-algebra member fails the weak gate but passes the separable one.
  VarietyModel equal(std::vector<Factor>{Factor{1, hamilton()},
                                         Factor{1, hamilton()}});
  std::vector<FormalBundle> with_box = {as_bundle(equal, deg({0, 0})),
                                        box_product(equal, deg({1, 1}))};
  CollectionOptions weak2;
  CheckReport at_weak = check_collection(equal, with_box, weak2);
  CHECK_FALSE(at_weak.passed);
  CollectionOptions sep2;
  sep2.strictness = Strictness::separable;
  CHECK(check_collection(equal, with_box, sep2).passed);
}

TEST_CASE("collections: strong flag detects forward higher ext") {
  VarietyModel X = p1p1();
  std::vector<FormalBundle> gap = {line(X, {0, 0}), line(X, {-2, 1})};
  // Backward Ext vanishes entirely, so the plain collection check passes...
  CollectionOptions plain;
  CHECK(check_collection(X, gap, plain).passed);
  // ...but Ext^1(O, O(-2,1)) != 0 fails strongness.
  CollectionOptions strong;
  strong.require_strong = true;
  CheckReport r = check_collection(X, gap, strong);
  CHECK_FALSE(r.passed);
  REQUIRE(!r.details["strong_failures"].empty());
  CHECK(r.details["strong_failures"][0]["r"] == 1);
}

TEST_CASE("collection validation") {
  VarietyModel X = p2();
  CHECK_THROWS_AS(check_collection(X, {}, CollectionOptions{}),
                  validation_error);
  CHECK_THROWS_AS(strictness_from_string("bogus"), validation_error);
  CHECK(strictness_from_string("weak") == Strictness::weak);
  CHECK(strictness_from_string("separable") == Strictness::separable);
}

TEST_CASE("bundle json round trip and validation") {
  VarietyModel C = conic();
  FormalBundle w = as_bundle(C, deg({1})).direct_sum(as_bundle(C, deg({0})));
  CHECK(bundle_from_json(C, bundle_to_json(w)) == w);

  Json geometric = Json::parse(
      R"({"summands": [{"degree": [1], "mult": 2, "geometric": true}]})");
  FormalBundle split = bundle_from_json(C, geometric);
  CHECK(split.split_rank() == 2);
  CHECK(split.parts().begin()->first.end_class().is_split());

  Json twist_ok = Json::parse(
      R"({"summands": [{"degree": [3], "twist_index": 3}]})");
  CHECK(bundle_from_json(C, twist_ok) == as_bundle(C, deg({3})));

  Json twist_bad = Json::parse(
      R"({"summands": [{"degree": [3], "twist_index": 2}]})");
  CHECK_THROWS_AS(bundle_from_json(C, twist_bad), validation_error);

  Json both = Json::parse(
      R"({"summands": [{"degree": [1], "geometric": true, "end": {"invariants": []}}]})");
  CHECK_THROWS_AS(bundle_from_json(C, both), validation_error);

  Json empty = Json::parse(R"({"summands": []})");
  CHECK_THROWS_AS(bundle_from_json(C, empty), validation_error);

  // Default end class is the variety-forced one.
  Json plain = Json::parse(R"({"summands": [{"degree": [1]}]})");
  CHECK(bundle_from_json(C, plain) == as_bundle(C, deg({1})));
}
