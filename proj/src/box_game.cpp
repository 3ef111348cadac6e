#include "cbgame/box_game.hpp"

#include <cmath>
#include <map>
#include <string>

#include "cbgame/errors.hpp"

namespace cbgame {

BoxState::BoxState(const std::vector<int>& capacities, int bias) : p(bias) {
  if (bias < 1) throw ParameterError("BoxMaker bias must be at least 1");
  for (int c : capacities) {
    if (c < 1) throw ParameterError("box capacity must be at least 1");
    boxes.push_back(Box{c, 0, 0});
  }
}

bool BoxState::has_free() const {
  for (const Box& b : boxes) {
    if (b.free() > 0) return true;
  }
  return false;
}

bool BoxState::maker_won() const {
  for (const Box& b : boxes) {
    if (b.maker == b.capacity) return true;
  }
  return false;
}

int boxbreaker_move_S(const BoxState& state) {
  int best = -1;
  for (int i = 0; i < static_cast<int>(state.boxes.size()); ++i) {
    const Box& b = state.boxes[static_cast<std::size_t>(i)];
    if (b.breaker != 0 || b.free() == 0) continue;
    if (best < 0 || b.maker > state.boxes[static_cast<std::size_t>(best)].maker) best = i;
  }
  if (best >= 0) return best;
  for (int i = 0; i < static_cast<int>(state.boxes.size()); ++i) {
    if (state.boxes[static_cast<std::size_t>(i)].free() > 0) return i;
  }
  throw NoMoveError("no free element left for BoxBreaker");
}

BoxGameResult run_box_game(const std::vector<int>& capacities, int p, const BoxMakerPolicy& maker,
                           std::uint64_t seed) {
  BoxState state(capacities, p);
  Rng rng(seed);
  BoxGameResult result;
  result.trace.capacities = capacities;
  result.trace.p = p;
  while (state.has_free()) {
    BoxTurn turn{BoxPlayer::Maker, {}};
    std::vector<int> picks = maker(state, rng);
    if (static_cast<int>(picks.size()) > p) throw IllegalMoveError("BoxMaker claimed more than p elements");
    for (int i : picks) {
      if (i < 0 || i >= static_cast<int>(state.boxes.size()) || state.boxes[static_cast<std::size_t>(i)].free() == 0) {
        throw IllegalMoveError("BoxMaker claimed from box " + std::to_string(i) + " without a free element");
      }
      ++state.boxes[static_cast<std::size_t>(i)].maker;
      turn.boxes.push_back(i);
      if (state.maker_won()) break;
    }
    result.trace.turns.push_back(turn);
    if (state.maker_won()) {
      result.maker_won = true;
      return result;
    }
    if (!state.has_free()) break;
    const int j = boxbreaker_move_S(state);
    ++state.boxes[static_cast<std::size_t>(j)].breaker;
    result.trace.turns.push_back(BoxTurn{BoxPlayer::Breaker, {j}});
  }
  return result;
}

bool corollary_bound_holds(const BoxTrace& trace) {
  const double n = static_cast<double>(trace.capacities.size());
  if (n == 0) return true;
  const double bound = trace.p * (std::log(n) + 1.0);
  std::vector<int> maker(trace.capacities.size(), 0);
  std::vector<char> touched(trace.capacities.size(), 0);
  for (const BoxTurn& turn : trace.turns) {
    for (int i : turn.boxes) {
      auto idx = static_cast<std::size_t>(i);
      if (turn.player == BoxPlayer::Breaker) {
        touched[idx] = 1;
        continue;
      }
      ++maker[idx];
      if (!touched[idx] && maker[idx] > bound) return false;
    }
  }
  return true;
}

namespace {

class ExhaustiveBox {
 public:
  ExhaustiveBox(const std::vector<int>& capacities, int p) : start_(capacities, p) {}

  bool maker_can_win() { return maker_turn(start_); }

 private:
  static std::vector<int> key_of(const BoxState& s) {
    std::vector<int> key;
    for (const Box& b : s.boxes) {
      key.push_back(b.maker);
      key.push_back(b.breaker);
    }
    return key;
  }

  bool maker_turn(const BoxState& s) {
    auto key = key_of(s);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    BoxState work = s;
    const bool win = extend(work, 0, s.p);
    memo_.emplace(std::move(key), win);
    return win;
  }

  // Enumerates multisets of claims as non-decreasing box index sequences.
  bool extend(BoxState& s, int from, int left) {
    if (s.maker_won()) return true;
    if (breaker_reply_loses(s)) return true;
    if (left == 0) return false;
    for (int i = from; i < static_cast<int>(s.boxes.size()); ++i) {
      Box& b = s.boxes[static_cast<std::size_t>(i)];
      if (b.free() == 0) continue;
      ++b.maker;
      const bool win = extend(s, i, left - 1);
      --b.maker;
      if (win) return true;
    }
    return false;
  }

  // BoxMaker stops here; true iff the game continues into a position where
  // BoxMaker can still force a win.
  bool breaker_reply_loses(const BoxState& s) {
    if (!s.has_free()) return false;
    BoxState next = s;
    ++next.boxes[static_cast<std::size_t>(boxbreaker_move_S(next))].breaker;
    if (!next.has_free()) return false;
    return maker_turn(next);
  }

  BoxState start_;
  std::map<std::vector<int>, bool> memo_;
};

}  // namespace

bool boxbreaker_wins_exhaustive(const std::vector<int>& capacities, int p) {
  ExhaustiveBox search(capacities, p);
  return !search.maker_can_win();
}

BoxMakerPolicy greedy_boxmaker() {
  return [](const BoxState& state, Rng&) {
    BoxState s = state;
    std::vector<int> picks;
    for (int k = 0; k < s.p; ++k) {
      int best = -1;
      for (int i = 0; i < static_cast<int>(s.boxes.size()); ++i) {
        const Box& b = s.boxes[static_cast<std::size_t>(i)];
        if (b.breaker != 0 || b.free() == 0) continue;
        if (best < 0 || b.maker > s.boxes[static_cast<std::size_t>(best)].maker) best = i;
      }
      if (best < 0) {
        for (int i = 0; i < static_cast<int>(s.boxes.size()); ++i) {
          if (s.boxes[static_cast<std::size_t>(i)].free() > 0) {
            best = i;
            break;
          }
        }
      }
      if (best < 0) break;
      ++s.boxes[static_cast<std::size_t>(best)].maker;
      picks.push_back(best);
    }
    return picks;
  };
}

BoxMakerPolicy random_boxmaker() {
  return [](const BoxState& state, Rng& rng) {
    BoxState s = state;
    std::vector<int> picks;
    for (int k = 0; k < s.p; ++k) {
      long long total = 0;
      for (const Box& b : s.boxes) total += b.free();
      if (total == 0) break;
      auto r = static_cast<long long>(rng.below(static_cast<std::uint64_t>(total)));
      for (int i = 0; i < static_cast<int>(s.boxes.size()); ++i) {
        Box& b = s.boxes[static_cast<std::size_t>(i)];
        if (r < b.free()) {
          ++b.maker;
          picks.push_back(i);
          break;
        }
        r -= b.free();
      }
    }
    return picks;
  };
}

}  // namespace cbgame
