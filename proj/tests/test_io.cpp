#include <gtest/gtest.h>

#include "glospan/glospan.hpp"
#include "glospan/json_io.hpp"

using namespace glospan;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::ParseError;
}

std::vector<GroupPtr> small_skeleton() {
  return {make_group("C1"), make_group("C2"), make_group("C3")};
}

}  // namespace

TEST(Rationals, ParseAndPrint) {
  EXPECT_EQ(parse_rational("-3/2"), Rational(-3, 2));
  EXPECT_EQ(parse_rational("+4"), Rational(4));
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(to_string(Rational(-3, 2)), "-3/2");
  EXPECT_EQ(to_string(Rational(5)), "5");
  for (const char* bad : {"", "1/0", "x", "1/", "/2", "-", "1.5"})
    EXPECT_EQ(kind_of([&] { parse_rational(bad); }), ErrorKind::ParseError) << bad;
}

TEST(AlgebraJson, RoundTrip) {
  for (const auto& a : {ground_field(), split_algebra(3), truncated_line(3), truncated_polynomial(2, 2), burnside_algebra(make_group("S3"))}) {
    auto j = algebra_to_json(*a);
    auto b = algebra_from_json(j);
    EXPECT_TRUE(same_algebra(a, b)) << a->label;
    EXPECT_EQ(algebra_to_json(*b).dump(), j.dump());
  }
}

TEST(AlgebraJson, GradingSurvives) {
  auto a = truncated_line(3);
  auto j = algebra_to_json(*a);
  j["grading"] = Json::array({0, 2, 4});
  auto b = algebra_from_json(j);
  ASSERT_TRUE(b->grading.has_value());
  EXPECT_EQ(*b->grading, (std::vector<int>{0, 2, 4}));
  EXPECT_EQ(algebra_to_json(*b)["grading"], j["grading"]);
}

TEST(AlgebraJson, Rejects) {
  auto good = algebra_to_json(*truncated_line(2));
  auto broken = [&](auto edit) {
    Json j = good;
    edit(j);
    return kind_of([&] { algebra_from_json(j); });
  };
  EXPECT_EQ(broken([](Json& j) { j.erase("dim"); }), ErrorKind::ParseError);
  EXPECT_EQ(broken([](Json& j) { j["dim"] = 0; }), ErrorKind::ParseError);
  EXPECT_EQ(broken([](Json& j) { j["unit"] = Json::array({"1"}); }), ErrorKind::ParseError);
  EXPECT_EQ(broken([](Json& j) { j["unit"][0] = "1/0"; }), ErrorKind::ParseError);
  EXPECT_EQ(broken([](Json& j) { j["products"] = Json::array({Json::array({0, 5, Json::array()})}); }), ErrorKind::ParseError);
  EXPECT_EQ(broken([](Json& j) { j["products"] = Json::array({Json::array({0, 0, Json::array({Json::array({7, "1"})})})}); }),
            ErrorKind::ParseError);
  EXPECT_EQ(broken([](Json& j) { j["products"] = Json::array({Json::array({0, 0})}); }), ErrorKind::ParseError);
  EXPECT_EQ(broken([](Json& j) { j["grading"] = Json::array({0}); }), ErrorKind::ParseError);
  EXPECT_EQ(broken([](Json& j) { j["dim"] = "two"; }), ErrorKind::ParseError);
}

TEST(MapJson, RoundTrip) {
  auto a = truncated_line(2);
  Matrix m{{1, 0}, {0, Rational(-1, 2)}};
  auto f = from_matrix(a, a, m);
  auto rows = map_to_json(f);
  EXPECT_EQ(rows.dump(), R"([["1","0"],["0","-1/2"]])");
  EXPECT_EQ(map_from_json(rows, a, a), f);
  EXPECT_EQ(kind_of([&] { map_from_json(Json::array({Json::array({"1", "0"})}), a, a); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([&] { map_from_json(Json::array({Json::array({"1"}), Json::array({"0"})}), a, a); }), ErrorKind::ParseError);
}

TEST(DiagramJson, RoundTripKeepsValidity) {
  SkeletonSpans spans(small_skeleton());
  std::vector<SpanDiagram> diagrams{constant_diagram(spans, truncated_line(2))};
  for (const auto& g : small_skeleton()) diagrams.push_back(free_functor(g, spans));
  for (const auto& d : diagrams) {
    auto j = diagram_to_json(d);
    EXPECT_EQ(j["schema"], kSchemaVersion);
    auto back = diagram_from_json(Json::parse(j.dump()));
    EXPECT_EQ(diagram_to_json(back).dump(), j.dump());
    EXPECT_EQ(back.inflations.size(), d.inflations.size());
    EXPECT_EQ(back.norms.size(), d.norms.size());
    EXPECT_TRUE(check_functor(back, spans).ok);
  }
}

TEST(DiagramJson, Rejects) {
  SkeletonSpans spans(small_skeleton());
  auto good = diagram_to_json(free_functor(make_group("C1"), spans));
  auto broken = [&](auto edit) {
    Json j = good;
    edit(j);
    return kind_of([&] { diagram_from_json(j); });
  };
  EXPECT_EQ(broken([](Json& j) { j.erase("schema"); }), ErrorKind::ParseError);
  EXPECT_EQ(broken([](Json& j) { j["schema"] = 2; }), ErrorKind::ParseError);
  EXPECT_EQ(broken([](Json& j) { j.erase("skeleton"); }), ErrorKind::ParseError);
  EXPECT_EQ(broken([](Json& j) { j["values"].erase(0); }), ErrorKind::ParseError);
  EXPECT_EQ(broken([](Json& j) { j["norm_class"] = "all"; }), ErrorKind::ParseError);
  EXPECT_EQ(broken([](Json& j) { j["norms"]["C5->C2#0"] = Json::array(); }), ErrorKind::ParseError);
  EXPECT_EQ(broken([](Json& j) { j["norms"]["C1C2"] = Json::array(); }), ErrorKind::ParseError);
  EXPECT_EQ(broken([](Json& j) { j["norms"]["C1->C2#0"] = Json::array({Json::array({"1"})}); }), ErrorKind::ParseError);
}

TEST(DiagramJson, MissingMapIsAViolationNotAParseError) {
  SkeletonSpans spans(small_skeleton());
  auto j = diagram_to_json(constant_diagram(spans, ground_field()));
  j["norms"].erase("C1->C2#0");
  auto d = diagram_from_json(j);
  auto r = check_functor(d, spans);
  EXPECT_FALSE(r.ok);
  auto rj = report_to_json(r);
  EXPECT_EQ(rj["kind"], "functor_report");
  EXPECT_FALSE(rj["ok"].get<bool>());
  EXPECT_FALSE(rj["violations"].empty());
}

TEST(SubgroupJson, RoundTripAndRejects) {
  auto s3 = make_group("S3");
  for (ElementMask m : s3->lattice().subgroups) EXPECT_EQ(subgroup_from_json(*s3, subgroup_to_json(m)), m);
  EXPECT_EQ(kind_of([&] { subgroup_from_json(*s3, Json::array({0, 9})); }), ErrorKind::ParseError);
  // a single non-identity element never closes up in S3
  for (Element x = 1; x < s3->order(); ++x)
    EXPECT_EQ(kind_of([&] { subgroup_from_json(*s3, Json::array({x})); }), ErrorKind::ParseError);
}

TEST(TransferJson, RoundTrip) {
  for (const char* name : {"C1", "C2", "C4", "S3", "C2xC2", "D8"})
    for (const auto& t : enumerate_transfer_systems(make_group(name))) {
      auto j = transfer_system_to_json(t);
      auto back = transfer_system_from_json(Json::parse(j.dump()));
      EXPECT_EQ(back.members(), t.members()) << name;
      EXPECT_EQ(transfer_system_to_json(back).dump(), j.dump()) << name;
    }
}

TEST(TransferJson, Rejects) {
  auto good = transfer_system_to_json(enumerate_transfer_systems(make_group("C4")).back());
  auto with = [&](auto edit) {
    Json j = good;
    edit(j);
    return kind_of([&] { transfer_system_from_json(j); });
  };
  EXPECT_EQ(with([](Json& j) { j["schema"] = 0; }), ErrorKind::ParseError);
  EXPECT_EQ(with([](Json& j) { j.erase("group"); }), ErrorKind::ParseError);
  EXPECT_EQ(with([](Json& j) { j["pairs"][0].erase("sup"); }), ErrorKind::ParseError);
  EXPECT_EQ(with([](Json& j) { j["group"] = "Q7"; }), ErrorKind::ParseError);
  // {1 <= C4} alone is not restriction closed
  EXPECT_EQ(with([](Json& j) {
              j["pairs"] = Json::array({Json::object({{"sub", Json::array({0})}, {"sup", Json::array({0, 1, 2, 3})}})});
            }),
            ErrorKind::InvalidTransferSystem);
}
