#include "qpskew/involution.hpp"

#include "helpers.hpp"

#include <algorithm>

#include <doctest.h>

using namespace qpskew;
using qpskew::testing::Rng;

TEST_CASE("validate_action partitions the disc quiver") {
    auto file = qpskew::testing::load_quiver("disc_quiver.q");
    Involution sigma = qpskew::testing::sigma_of(file);
    ActionPartition part = validate_action(file.qp.quiver, sigma);
    CHECK(part.v_list == std::vector<int>{file.qp.quiver.vertex_index("2")});
    CHECK(part.w_list.size() == 4);
}

TEST_CASE("identity action fixes everything") {
    auto file = qpskew::testing::load_quiver("cyl_quiver.q");
    Involution id = Involution::identity(file.qp.quiver);
    ActionPartition part = validate_action(file.qp.quiver, id);
    CHECK(part.w_list.empty());
    auto choice = find_admissible(file.qp.quiver, id);
    REQUIRE(choice.has_value());
    CHECK(choice->w_reps.empty());
    CHECK(static_cast<int>(choice->arrow_reps.size()) == file.qp.quiver.num_arrows());
}

TEST_CASE("validate_action is independent of the declaration order") {
    auto file = qpskew::testing::load_quiver("disc_quiver.q");
    std::vector<std::pair<std::string, std::string>> vs = file.sigma_vertices;
    std::reverse(vs.begin(), vs.end());
    std::swap(vs[0].first, vs[0].second);
    std::vector<std::pair<std::string, std::string>> as = file.sigma_arrows;
    std::reverse(as.begin(), as.end());
    Involution reordered = Involution::from_pairs(file.qp.quiver, vs, as);
    Involution original = qpskew::testing::sigma_of(file);
    CHECK(reordered.vertex_map() == original.vertex_map());
    CHECK(reordered.arrow_map() == original.arrow_map());
    ActionPartition a = validate_action(file.qp.quiver, original);
    ActionPartition b = validate_action(file.qp.quiver, reordered);
    CHECK(a.v_list == b.v_list);
    CHECK(a.w_list == b.w_list);
}

TEST_CASE("broken actions are rejected with the right error") {
    Quiver q;
    q.add_vertex("1");
    q.add_vertex("2");
    q.add_vertex("2s");
    q.add_arrow("al", "1", "2");
    q.add_arrow("als", "1", "2s");

    // Swapping target but fixing the arrow breaks endpoint compatibility.
    Involution bad({0, 2, 1}, {0, 1});
    CHECK_THROWS_WITH_AS(validate_action(q, bad), doctest::Contains("image endpoints"), Error);

    // A non-involutive vertex map.
    Quiver q3;
    q3.add_vertex("1");
    q3.add_vertex("2");
    q3.add_vertex("3");
    Involution cyc({1, 2, 0}, {});
    CHECK_THROWS_WITH_AS(validate_action(q3, cyc), doctest::Contains("not an involution"), Error);

    // Fixed endpoints force the arrow fixed.
    Quiver q2;
    q2.add_vertex("1");
    q2.add_vertex("2");
    q2.add_arrow("x", "1", "2");
    q2.add_arrow("y", "1", "2");
    Involution swap_arrows({0, 1}, {1, 0});
    CHECK_THROWS_AS(validate_action(q2, swap_arrows), Error);
}

TEST_CASE("admissible choice exists for the chain example") {
    // 1 -> 2 <- 1', 2 -> 3/3', 3 -> 4, 3' -> 4'.
    Quiver q;
    for (auto v : {"1", "1s", "2", "3", "3s", "4", "4s"}) q.add_vertex(v);
    q.add_arrow("al", "1", "2");
    q.add_arrow("als", "1s", "2");
    q.add_arrow("be", "2", "3");
    q.add_arrow("bes", "2", "3s");
    q.add_arrow("ga", "3", "4");
    q.add_arrow("gas", "3s", "4s");
    Involution sigma = Involution::from_pairs(
        q, {{"1", "1s"}, {"3", "3s"}, {"4", "4s"}}, {{"al", "als"}, {"be", "bes"}, {"ga", "gas"}});
    auto choice = find_admissible(q, sigma);
    REQUIRE(choice.has_value());
    std::vector<int> expect{q.vertex_index("1"), q.vertex_index("3"), q.vertex_index("4")};
    CHECK(choice->w_reps == expect);
    std::vector<int> arrows{q.arrow_index("al"), q.arrow_index("be"), q.arrow_index("ga")};
    CHECK(choice->arrow_reps == arrows);
    ActionPartition part = validate_action(q, sigma);
    CHECK(is_admissible_choice(q, sigma, part, *choice));
}

TEST_CASE("the crossed square has no admissible choice") {
    Quiver q;
    for (auto v : {"1", "1s", "2", "2s"}) q.add_vertex(v);
    q.add_arrow("al", "1", "2");
    q.add_arrow("als", "1s", "2s");
    q.add_arrow("be", "1s", "2");
    q.add_arrow("bes", "1", "2s");
    Involution sigma =
        Involution::from_pairs(q, {{"1", "1s"}, {"2", "2s"}}, {{"al", "als"}, {"be", "bes"}});
    CHECK_FALSE(find_admissible(q, sigma).has_value());
}

TEST_CASE("find_admissible only returns admissible choices") {
    Rng rng(31);
    int found = 0;
    for (int round = 0; round < 200 && found < 50; ++round) {
        auto ra = qpskew::testing::random_action(rng);
        auto choice = find_admissible(ra.q, ra.sigma);
        if (!choice) continue;
        ++found;
        ActionPartition part = validate_action(ra.q, ra.sigma);
        CHECK(is_admissible_choice(ra.q, ra.sigma, part, *choice));
        // Exactly one member per arrow orbit, endpoints in V or o(W).
        for (int a : choice->arrow_reps) {
            const auto& arr = ra.q.arrow(a);
            CHECK((part.in_v(arr.src) || choice->is_w_rep[arr.src]));
            CHECK((part.in_v(arr.tgt) || choice->is_w_rep[arr.tgt]));
        }
    }
    CHECK(found == 50);
}

TEST_CASE("potential invariance") {
    auto file = qpskew::testing::load_quiver("cyl_quiver.q");
    const Quiver& q = file.qp.quiver;
    Involution sigma = qpskew::testing::sigma_of(file);
    CHECK(check_potential_invariance(q, file.qp.potential, sigma));

    // fed alone is not invariant: sigma sends it to fe'd'.
    Path fed;
    for (auto id : {"d", "e", "f"}) fed.arrows.push_back(q.arrow_index(id));
    Potential half(q, PathExpr(fed));
    CHECK_FALSE(check_potential_invariance(q, half, sigma));
    CHECK(check_potential_invariance(q, Potential(), sigma));
}
