#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "tpn/profiles.hpp"

namespace {

bool same_counts(const tpn::Profile& a, const tpn::Profile& b) {
  return a.state_counts == b.state_counts &&
         a.transition_counts == b.transition_counts &&
         a.n_windows == b.n_windows && a.n_possessions == b.n_possessions &&
         a.n_windowed_possessions == b.n_windowed_possessions;
}

// Random chain-consistent possession on a five-player roster.
tpn::Possession random_possession(std::mt19937_64& rng, int index) {
  tpn::Possession p;
  p.game_id = "G01";
  p.possession_id = "P" + std::to_string(index);
  p.team = "Home";
  p.start_ms = static_cast<tpn::Millis>(10 * (rng() % 1000));
  const auto length = static_cast<tpn::Millis>(10 * (300 + rng() % 900));
  p.end_ms = p.start_ms + length;
  const char* names[] = {"a", "b", "c", "d", "e"};
  int holder = static_cast<int>(rng() % 5);
  tpn::Millis t = static_cast<tpn::Millis>(10 * (30 + rng() % 30));
  while (t <= length) {
    int next = static_cast<int>(rng() % 5);
    while (next == holder) next = static_cast<int>(rng() % 5);
    tpn::PassEvent ev;
    ev.game_id = p.game_id;
    ev.possession_id = p.possession_id;
    ev.time_ms = p.start_ms + t;
    ev.passer = names[holder];
    ev.receiver = names[next];
    p.events.push_back(ev);
    holder = next;
    t += static_cast<tpn::Millis>(10 * (26 + rng() % 150));
  }
  return p;
}

}  // namespace

TEST_CASE("state and transition counts follow the window sequence",
          "[profiles]") {
  const tpn::WindowParams wp{6000, 250};
  // 1.5s of passes a->b->a, then silence; 7s possession = 5 windows.
  tpn::Possession p;
  p.game_id = "G01";
  p.possession_id = "P001";
  p.team = "Home";
  p.start_ms = 0;
  p.end_ms = 7000;
  const char* chain[] = {"a", "b", "a"};
  const tpn::Millis at[] = {400, 900};
  for (int i = 0; i < 2; ++i) {
    tpn::PassEvent ev;
    ev.time_ms = at[i];
    ev.passer = chain[i];
    ev.receiver = chain[i + 1];
    p.events.push_back(ev);
  }
  // windows: [0,6000] 121, [250,6250] 121, [500,6500] 12 (only the pass at
  // 900 remains), [750,6750] 12, [1000,7000] 1
  const tpn::Profile prof = tpn::profile_of(std::vector{p}, wp, "demo");
  CHECK(prof.key == "demo");
  CHECK(prof.n_possessions == 1);
  CHECK(prof.n_windowed_possessions == 1);
  CHECK(prof.n_windows == 5);
  using S = tpn::GraphletState;
  CHECK(prof.state_counts[static_cast<int>(S::s121)] == 2);
  CHECK(prof.state_counts[static_cast<int>(S::s12)] == 2);
  CHECK(prof.state_counts[static_cast<int>(S::s1)] == 1);
  CHECK(prof.transition_counts[static_cast<int>(S::s121)]
                              [static_cast<int>(S::s121)] == 1);
  CHECK(prof.transition_counts[static_cast<int>(S::s121)]
                              [static_cast<int>(S::s12)] == 1);
  CHECK(prof.transition_counts[static_cast<int>(S::s12)]
                              [static_cast<int>(S::s12)] == 1);
  CHECK(prof.transition_counts[static_cast<int>(S::s12)]
                              [static_cast<int>(S::s1)] == 1);
}

TEST_CASE("short possessions count but contribute no windows", "[profiles]") {
  const tpn::WindowParams wp{6000, 250};
  tpn::Possession p;
  p.start_ms = 0;
  p.end_ms = 5000;
  const tpn::Profile prof = tpn::profile_of(std::vector{p}, wp);
  CHECK(prof.n_possessions == 1);
  CHECK(prof.n_windowed_possessions == 0);
  CHECK(prof.n_windows == 0);
  CHECK_THROWS_AS(tpn::stochastic_view(prof), tpn::ProfileError);
}

TEST_CASE("merging profiles equals profiling the union", "[profiles][property]") {
  const tpn::WindowParams wp{6000, 250};
  std::mt19937_64 rng(4242);
  std::vector<tpn::Possession> all;
  for (int i = 0; i < 24; ++i) all.push_back(random_possession(rng, i));

  const tpn::Profile whole = tpn::profile_of(all, wp, "whole");
  for (std::size_t cut1 = 1; cut1 < all.size(); cut1 += 5) {
    for (std::size_t cut2 = cut1 + 1; cut2 < all.size(); cut2 += 7) {
      const std::vector<tpn::Possession> s1(all.begin(), all.begin() + cut1);
      const std::vector<tpn::Possession> s2(all.begin() + cut1,
                                            all.begin() + cut2);
      const std::vector<tpn::Possession> s3(all.begin() + cut2, all.end());
      const tpn::Profile p1 = tpn::profile_of(s1, wp, "whole");
      const tpn::Profile p2 = tpn::profile_of(s2, wp, "whole");
      const tpn::Profile p3 = tpn::profile_of(s3, wp, "whole");
      // associativity and commutativity of the counts
      CHECK(same_counts(tpn::merge(tpn::merge(p1, p2), p3), whole));
      CHECK(same_counts(tpn::merge(p1, tpn::merge(p2, p3)), whole));
      CHECK(same_counts(tpn::merge(p3, tpn::merge(p2, p1)), whole));
    }
  }
}

TEST_CASE("profiles with different window parameters refuse to merge",
          "[profiles]") {
  tpn::Profile a;
  a.params = {6000, 250};
  tpn::Profile b;
  b.params = {6000, 500};
  CHECK_THROWS_AS(tpn::merge(a, b), tpn::ProfileError);
}

TEST_CASE("the stochastic view is row-normalized with a clean diagonal cut",
          "[profiles][property]") {
  const tpn::WindowParams wp{6000, 250};
  std::mt19937_64 rng(7);
  std::vector<tpn::Possession> all;
  for (int i = 0; i < 40; ++i) all.push_back(random_possession(rng, i));
  const tpn::Profile prof = tpn::profile_of(all, wp);
  REQUIRE(prof.n_windows > 0);
  const tpn::StochasticView view = tpn::stochastic_view(prof);

  double p_sum = 0.0;
  for (double v : view.p) p_sum += v;
  CHECK_THAT(p_sum, Catch::Matchers::WithinAbs(1.0, 1e-12));

  for (int i = 0; i < tpn::kStateCount; ++i) {
    double row = 0.0;
    double row_restricted = 0.0;
    for (int j = 0; j < tpn::kStateCount; ++j) {
      row += view.M[i][j];
      row_restricted += view.M_restricted[i][j];
    }
    switch (view.row_kind[i]) {
      case tpn::StochasticView::RowKind::observed:
        CHECK_THAT(row, Catch::Matchers::WithinAbs(1.0, 1e-12));
        CHECK_THAT(row_restricted, Catch::Matchers::WithinAbs(1.0, 1e-12));
        CHECK(view.M_restricted[i][i] == 0.0);
        break;
      case tpn::StochasticView::RowKind::absorbing_only:
        CHECK_THAT(row, Catch::Matchers::WithinAbs(1.0, 1e-12));
        CHECK(row_restricted == 0.0);
        break;
      case tpn::StochasticView::RowKind::unobserved:
        CHECK(row == 0.0);
        CHECK(row_restricted == 0.0);
        break;
    }
  }
}

TEST_CASE("a row with only self-transitions is marked absorbing",
          "[profiles]") {
  tpn::Profile prof;
  prof.n_windows = 4;
  prof.state_counts[0] = 4;
  prof.transition_counts[0][0] = 3;
  const tpn::StochasticView view = tpn::stochastic_view(prof);
  CHECK(view.row_kind[0] == tpn::StochasticView::RowKind::absorbing_only);
  CHECK(view.M[0][0] == 1.0);
  CHECK(view.row_kind[1] == tpn::StochasticView::RowKind::unobserved);
}
