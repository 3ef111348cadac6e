#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cbgame/random.hpp"

namespace cbgame {

/// One box; its elements are interchangeable so only counts are kept.
struct Box {
  int capacity = 1;
  int maker = 0;
  int breaker = 0;

  int free() const { return capacity - maker - breaker; }
  friend bool operator==(const Box&, const Box&) = default;
};

enum class BoxPlayer { Maker, Breaker };

struct BoxState {
  std::vector<Box> boxes;
  int p = 1;
  BoxPlayer to_move = BoxPlayer::Maker;

  BoxState() = default;
  BoxState(const std::vector<int>& capacities, int bias);

  bool has_free() const;
  bool maker_won() const;
};

/// BoxBreaker's strategy: among boxes where BoxBreaker has nothing yet and an
/// element is free, the one holding most BoxMaker elements (lowest index on
/// ties); otherwise the lowest-index box with a free element. Throws
/// NoMoveError when every box is full.
int boxbreaker_move_S(const BoxState& state);

struct BoxTurn {
  BoxPlayer player = BoxPlayer::Maker;
  std::vector<int> boxes;  // box index of each claimed element, in order
};

struct BoxTrace {
  std::vector<int> capacities;
  int p = 1;
  std::vector<BoxTurn> turns;
};

/// Box indices for BoxMaker's next turn: at most p entries, each naming a box
/// that still has a free element when its turn comes.
using BoxMakerPolicy = std::function<std::vector<int>(const BoxState&, Rng&)>;

struct BoxGameResult {
  bool maker_won = false;
  BoxTrace trace;
};

/// BoxMaker moves first; BoxBreaker answers with S. Play stops as soon as
/// BoxMaker fills a box or no free element remains.
BoxGameResult run_box_game(const std::vector<int>& capacities, int p, const BoxMakerPolicy& maker,
                           std::uint64_t seed);

/// Checks that every box, for as long as BoxBreaker has no element in it,
/// holds at most p(ln n + 1) BoxMaker elements after each claim.
bool corollary_bound_holds(const BoxTrace& trace);

/// True iff S defeats every BoxMaker play (exhaustive game tree, partial
/// BoxMaker turns included).
bool boxbreaker_wins_exhaustive(const std::vector<int>& capacities, int p);

/// Spreads p elements onto the boxes with most BoxMaker elements among those
/// BoxBreaker has not touched, then onto any box with room.
BoxMakerPolicy greedy_boxmaker();
/// p elements chosen uniformly among the free ones.
BoxMakerPolicy random_boxmaker();

}  // namespace cbgame
