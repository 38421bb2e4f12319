// Copyright 2026 The omegaphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// \file tm.hpp
/// Single-tape Turing machines over {0, 1, blank}: the text format, the
/// length-lexicographic input enumeration, literal step-bounded execution,
/// and a symbolic explorer that runs a machine on whole families of inputs
/// at once by branching only when the head first reads an input cell.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "omegaphase/dyadic.hpp"
#include "omegaphase/errors.hpp"

namespace omegaphase {

inline constexpr std::uint8_t kBlank = 2;

enum class Move : std::uint8_t { Left, Right, Stay };

struct Transition {
  int next = 0;
  std::uint8_t write = kBlank;
  Move move = Move::Stay;
};

/// An immutable machine description. The tape is one-way infinite to the
/// right; a left move on cell 0 leaves the head on cell 0.
class MachineSpec {
 public:
  /// Parses the line format
  ///
  ///     # comment
  ///     name: two_words
  ///     start: q0
  ///     halt: h
  ///     q0 0 -> q1 0 R
  ///
  /// Symbols are `0`, `1` and `_` (blank); moves are `L`, `R`, `S`. The
  /// table must be total on every non-halt state and carry no rule for the
  /// halt state.
  static MachineSpec parse(const std::string& text, const std::string& default_name = "machine");

  static MachineSpec load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open machine file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    std::string stem = path.substr(path.find_last_of('/') + 1);
    stem = stem.substr(0, stem.find('.'));
    return parse(ss.str(), stem);
  }

  const std::string& name() const noexcept { return name_; }
  int start() const noexcept { return start_; }
  int halt() const noexcept { return halt_; }
  std::size_t num_states() const noexcept { return state_names_.size(); }
  const std::string& state_name(int q) const { return state_names_.at(static_cast<std::size_t>(q)); }

  const Transition& rule(int state, std::uint8_t symbol) const {
    return table_[static_cast<std::size_t>(state)][symbol];
  }

 private:
  std::string name_;
  std::vector<std::string> state_names_;
  int start_ = 0;
  int halt_ = 0;
  std::vector<std::array<Transition, 3>> table_;
};

inline MachineSpec MachineSpec::parse(const std::string& text, const std::string& default_name) {
  MachineSpec spec;
  spec.name_ = default_name;
  std::map<std::string, int> ids;
  auto id_of = [&](const std::string& s) {
    auto [it, inserted] = ids.emplace(s, static_cast<int>(spec.state_names_.size()));
    if (inserted) spec.state_names_.push_back(s);
    return it->second;
  };
  auto symbol_of = [](const std::string& tok, int line) -> std::uint8_t {
    if (tok == "0") return 0;
    if (tok == "1") return 1;
    if (tok == "_") return kBlank;
    throw ParseError("unknown symbol '" + tok + "'", line);
  };

  std::optional<std::string> start_name;
  std::optional<std::string> halt_name;
  struct Pending {
    int line;
    std::string from;
    std::uint8_t read;
    std::string to;
    std::uint8_t write;
    Move move;
  };
  std::vector<Pending> rules;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "name:" || first == "start:" || first == "halt:") {
      std::string value;
      if (!(ls >> value)) throw ParseError("missing value after '" + first + "'", line_no);
      if (first == "name:") spec.name_ = value;
      if (first == "start:") {
        if (start_name) throw ParseError("duplicate start header", line_no);
        start_name = value;
      }
      if (first == "halt:") {
        if (halt_name) throw ParseError("duplicate halt header", line_no);
        halt_name = value;
      }
      continue;
    }
    std::string read, arrow, to, write, move;
    if (!(ls >> read >> arrow >> to >> write >> move) || arrow != "->") {
      throw ParseError("expected 'state symbol -> state symbol move'", line_no);
    }
    std::string extra;
    if (ls >> extra) throw ParseError("trailing token '" + extra + "'", line_no);
    Move mv;
    if (move == "L") mv = Move::Left;
    else if (move == "R") mv = Move::Right;
    else if (move == "S") mv = Move::Stay;
    else throw ParseError("unknown move '" + move + "'", line_no);
    rules.push_back({line_no, first, symbol_of(read, line_no), to, symbol_of(write, line_no), mv});
  }
  if (!start_name) throw ParseError("missing 'start:' header");
  if (!halt_name) throw ParseError("missing 'halt:' header");
  if (*start_name == *halt_name) throw ParseError("start state must differ from the halt state");

  spec.start_ = id_of(*start_name);
  spec.halt_ = id_of(*halt_name);
  for (const auto& r : rules) {
    id_of(r.from);
    id_of(r.to);
  }
  const std::size_t n = spec.state_names_.size();
  spec.table_.assign(n, {});
  std::vector<std::array<int, 3>> defined_at(n, {0, 0, 0});
  for (const auto& r : rules) {
    const int from = ids.at(r.from);
    if (from == spec.halt_) throw ParseError("rule for the halt state '" + r.from + "'", r.line);
    int& seen = defined_at[static_cast<std::size_t>(from)][r.read];
    if (seen != 0) {
      throw ParseError("duplicate rule for (" + r.from + ", " + std::string(1, "01_"[r.read]) +
                           "), first defined on line " + std::to_string(seen),
                       r.line);
    }
    seen = r.line;
    spec.table_[static_cast<std::size_t>(from)][r.read] = {ids.at(r.to), r.write, r.move};
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (static_cast<int>(q) == spec.halt_) continue;
    for (std::uint8_t sym = 0; sym < 3; ++sym) {
      if (defined_at[q][sym] == 0) {
        throw ParseError("transition table is not total: no rule for (" + spec.state_names_[q] +
                         ", " + std::string(1, "01_"[sym]) + ")");
      }
    }
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Input enumeration: x_1 = "", x_2 = "0", x_3 = "1", x_4 = "00", ...
// The index of a word w is 2^|w| + value(w).

inline BitString enumerate_input(std::uint64_t i) {
  if (i == 0) throw ConstraintError("enumerate_input: indices start at 1");
  const int len = 63 - std::countl_zero(i);
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(len));
  for (int k = 0; k < len; ++k) bits[static_cast<std::size_t>(len - 1 - k)] = (i >> k) & 1U;
  return BitString(std::move(bits));
}

inline std::uint64_t input_index(const BitString& w) {
  if (w.size() > 62) throw ConstraintError("input_index: word longer than 62 bits");
  std::uint64_t v = 1;
  for (auto b : w.bits()) v = (v << 1) | b;
  return v;
}

// ---------------------------------------------------------------------------
// Literal execution.

struct ExecutionResult {
  bool halted = false;
  std::uint64_t steps_used = 0;
  std::uint64_t cells_used = 0;
};

/// Runs M on x for at most `budget` transitions.
inline ExecutionResult run_bounded(const MachineSpec& m, const BitString& x, std::uint64_t budget) {
  std::vector<std::uint8_t> tape(x.bits());
  std::size_t head = 0;
  std::size_t max_head = 0;
  int state = m.start();
  std::uint64_t steps = 0;
  while (steps < budget && state != m.halt()) {
    if (head >= tape.size()) tape.resize(head + 1, kBlank);
    const Transition& t = m.rule(state, tape[head]);
    tape[head] = t.write;
    state = t.next;
    if (t.move == Move::Right) ++head;
    else if (t.move == Move::Left && head > 0) --head;
    max_head = std::max(max_head, head);
    ++steps;
  }
  return {state == m.halt(), steps, std::max<std::uint64_t>(x.size(), max_head + 1)};
}

// ---------------------------------------------------------------------------
// Symbolic exploration over the input tree.

enum class LeafOutcome { Halted, Loops, BudgetExhausted };

/// One class of inputs with identical behaviour. When `exact` is true the
/// class is the single word `prefix`; otherwise it is every word extending
/// `prefix` (the machine stopped before reading cell |prefix|).
struct InputLeaf {
  BitString prefix;
  bool exact = false;
  LeafOutcome outcome = LeafOutcome::BudgetExhausted;
  std::uint64_t steps = 0;  ///< halting time, or steps simulated
};

struct ExploreOptions {
  std::uint64_t step_budget = 0;
  /// Whether some admissible input extends this (non-exact) prefix; pruned
  /// subtrees are not reported.
  std::function<bool(const BitString&)> admit_prefix = [](const BitString&) { return true; };
  /// Whether the exact word is admissible.
  std::function<bool(const BitString&)> admit_word = [](const BitString&) { return true; };
  /// Cap on total simulated transitions across all branches.
  std::uint64_t effort_cap = 200'000'000;
};

namespace detail {

struct SymConfig {
  int state = 0;
  std::size_t head = 0;
  std::vector<std::uint8_t> tape;  // cells [0, known) for open branches
  BitString prefix;
  bool exact = false;
  std::uint64_t steps = 0;
};

inline bool same_tape(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t x = i < a.size() ? a[i] : kBlank;
    const std::uint8_t y = i < b.size() ? b[i] : kBlank;
    if (x != y) return false;
  }
  return true;
}

}  // namespace detail

/// Explores every admissible input class. Loops are certified in two ways:
/// an exactly repeated configuration (Brent's cycle finding), and a
/// translated repeat where the head reaches fresh blank territory twice in
/// the same state without having moved left of the first such cell.
class InputTreeExplorer {
 public:
  InputTreeExplorer(const MachineSpec& m, ExploreOptions opts) : m_(m), opts_(std::move(opts)) {}

  /// Explores all inputs (starting from the empty prefix, open).
  std::vector<InputLeaf> explore() {
    detail::SymConfig root;
    root.state = m_.start();
    return run_from(std::move(root));
  }

  /// Explores the single word x.
  InputLeaf explore_word(const BitString& x) {
    detail::SymConfig root;
    root.state = m_.start();
    root.tape = x.bits();
    root.prefix = x;
    root.exact = true;
    auto leaves = run_from(std::move(root));
    return leaves.front();
  }

  std::uint64_t effort() const noexcept { return effort_; }

 private:
  std::vector<InputLeaf> run_from(detail::SymConfig root) {
    std::vector<InputLeaf> leaves;
    std::vector<detail::SymConfig> stack;
    stack.push_back(std::move(root));
    while (!stack.empty()) {
      detail::SymConfig c = std::move(stack.back());
      stack.pop_back();
      simulate(std::move(c), stack, leaves);
    }
    std::sort(leaves.begin(), leaves.end(), [](const InputLeaf& a, const InputLeaf& b) {
      if (a.prefix != b.prefix) return a.prefix < b.prefix;
      return a.exact > b.exact;
    });
    return leaves;
  }

  void simulate(detail::SymConfig c, std::vector<detail::SymConfig>& stack,
                std::vector<InputLeaf>& leaves) {
    // Brent snapshot.
    detail::SymConfig snap = c;
    std::uint64_t power = 1;
    // Translated-cycle records per state: (cell, min head since).
    struct Record {
      bool set = false;
      std::size_t cell = 0;
      std::size_t min_head = 0;
    };
    std::vector<Record> records(m_.num_states());
    std::size_t max_visited = c.head;
    bool any_move = false;

    while (true) {
      if (c.state == m_.halt()) {
        leaves.push_back({c.prefix, c.exact, LeafOutcome::Halted, c.steps});
        return;
      }
      if (c.steps >= opts_.step_budget) {
        leaves.push_back({c.prefix, c.exact, LeafOutcome::BudgetExhausted, c.steps});
        return;
      }
      if (!c.exact && c.head == c.tape.size()) {
        branch(std::move(c), stack);
        return;
      }
      if (c.head >= c.tape.size()) c.tape.resize(c.head + 1, kBlank);

      // Fresh blank territory to the right of everything seen so far.
      const bool fresh = !any_move || c.head > max_visited;
      if (c.head > max_visited) max_visited = c.head;
      if (c.exact && fresh && c.head >= c.prefix.size()) {
        Record& r = records[static_cast<std::size_t>(c.state)];
        if (r.set && c.head > r.cell && r.min_head >= r.cell) {
          leaves.push_back({c.prefix, c.exact, LeafOutcome::Loops, c.steps});
          return;
        }
        r = {true, c.head, c.head};
      }

      if (++effort_ > opts_.effort_cap) {
        throw NumericalError("input-tree exploration exceeded its effort cap of " +
                             std::to_string(opts_.effort_cap) + " transitions");
      }
      const Transition& t = m_.rule(c.state, c.tape[c.head]);
      c.tape[c.head] = t.write;
      c.state = t.next;
      if (t.move == Move::Right) ++c.head;
      else if (t.move == Move::Left && c.head > 0) --c.head;
      ++c.steps;
      any_move = true;
      for (auto& r : records) {
        if (r.set) r.min_head = std::min(r.min_head, c.head);
      }

      if (c.state == snap.state && c.head == snap.head && detail::same_tape(c.tape, snap.tape)) {
        leaves.push_back({c.prefix, c.exact, LeafOutcome::Loops, c.steps});
        return;
      }
      if (c.steps - snap.steps == power) {
        snap.state = c.state;
        snap.head = c.head;
        snap.tape = c.tape;
        snap.steps = c.steps;
        power *= 2;
      }
    }
  }

  void branch(detail::SymConfig c, std::vector<detail::SymConfig>& stack) {
    // Children are pushed in reverse so that the blank branch runs first.
    for (int sym : {1, 0}) {
      BitString p = c.prefix.with(static_cast<std::uint8_t>(sym));
      if (!opts_.admit_prefix(p)) continue;
      detail::SymConfig child = c;
      child.tape.push_back(static_cast<std::uint8_t>(sym));
      child.prefix = std::move(p);
      stack.push_back(std::move(child));
    }
    if (opts_.admit_word(c.prefix)) {
      c.exact = true;
      c.tape.push_back(kBlank);
      stack.push_back(std::move(c));
    }
  }

  const MachineSpec& m_;
  ExploreOptions opts_;
  std::uint64_t effort_ = 0;
};

/// Certifies that M(x) never halts, exploring at most `effort` transitions.
/// Returns the step at which a loop was certified.
inline std::optional<std::uint64_t> certify_nonhalting(const MachineSpec& m, const BitString& x,
                                                       std::uint64_t effort = 10'000'000) {
  ExploreOptions opts;
  opts.step_budget = effort;
  InputTreeExplorer ex(m, opts);
  InputLeaf leaf = ex.explore_word(x);
  if (leaf.outcome == LeafOutcome::Loops) return leaf.steps;
  return std::nullopt;
}

/// All words of length <= max_len on which M halts within `budget` steps.
/// Throws when an open leaf would expand to more than `expand_limit` words.
inline std::vector<BitString> halting_words_within(const MachineSpec& m, std::uint64_t budget,
                                                   std::size_t max_len,
                                                   std::size_t expand_limit = 1U << 16) {
  ExploreOptions opts;
  opts.step_budget = budget;
  opts.admit_prefix = [max_len](const BitString& p) { return p.size() <= max_len; };
  opts.admit_word = [max_len](const BitString& p) { return p.size() <= max_len; };
  InputTreeExplorer ex(m, opts);
  std::vector<BitString> out;
  for (const auto& leaf : ex.explore()) {
    if (leaf.outcome != LeafOutcome::Halted) continue;
    if (leaf.exact) {
      out.push_back(leaf.prefix);
      continue;
    }
    // Every extension up to max_len halts as well.
    std::vector<BitString> frontier{leaf.prefix};
    while (!frontier.empty()) {
      BitString w = std::move(frontier.back());
      frontier.pop_back();
      out.push_back(w);
      if (out.size() > expand_limit) {
        throw NumericalError("halting set within budget is too large to enumerate");
      }
      if (w.size() < max_len) {
        frontier.push_back(w.with(0));
        frontier.push_back(w.with(1));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Every pair (x, y), x a proper prefix of y, among words of length <= s on
/// which M halts within s steps. An empty result means no violation was
/// detected, not that M is prefix-free.
inline std::vector<std::pair<BitString, BitString>> check_prefix_free_up_to(const MachineSpec& m,
                                                                            std::uint64_t s) {
  if (s < 1) throw ConstraintError("check_prefix_free_up_to: s must be >= 1");
  const auto words = halting_words_within(m, s, static_cast<std::size_t>(std::min<std::uint64_t>(s, 4096)));
  std::set<BitString> lookup(words.begin(), words.end());
  std::vector<std::pair<BitString, BitString>> violations;
  for (const auto& y : words) {
    for (std::size_t len = 0; len < y.size(); ++len) {
      BitString x(std::vector<std::uint8_t>(y.bits().begin(), y.bits().begin() + static_cast<std::ptrdiff_t>(len)));
      if (lookup.count(x)) violations.emplace_back(std::move(x), y);
    }
  }
  std::sort(violations.begin(), violations.end());
  return violations;
}

}  // namespace omegaphase
