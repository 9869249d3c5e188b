#pragma once

// Running test purposes against IUT models through the synchronous product.
// A TP fails the IUT iff some product state (fail, q) is reachable.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "ioconf/error.hpp"
#include "ioconf/iolts.hpp"
#include "ioconf/testgen.hpp"

namespace ioconf {

enum class TpVerdict { pass, fail };

struct TpResult {
  std::size_t id = 0;
  TpVerdict verdict = TpVerdict::pass;
  Word witness;             // set when verdict == fail
  bool incomplete = false;  // some TP stimulus was refused by the IUT
};

struct RunReport {
  std::vector<TpResult> tps;
  bool passed = true;  // every record passes
  double elapsed_ms = 0;
};

struct RunOptions {
  bool fail_fast = false;
  unsigned parallel = 1;
};

/// IUT data shared by every run against it.
class PreparedIut {
 public:
  explicit PreparedIut(const Iolts& iut_in) : iut_(ensure_quiescence(iut_in)) {
    const std::size_t n = iut_.size();
    closure_.resize(n);
    for (std::size_t s = 0; s < n; ++s) closure_[s] = tau_closure(iut_, {s});
    moves_.resize(n);
    for (const auto& t : iut_.transitions)
      if (t.label.kind != LabelKind::tau) moves_[t.source].push_back(t);
    for (auto& v : moves_)
      std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        return a.label < b.label;
      });
  }

  const Iolts& model() const { return iut_; }
  const std::vector<std::size_t>& closure(std::size_t s) const { return closure_[s]; }
  const std::vector<Transition>& moves(std::size_t s) const { return moves_[s]; }

 private:
  Iolts iut_;
  std::vector<std::vector<std::size_t>> closure_;
  std::vector<std::vector<Transition>> moves_;
};

namespace detail {

constexpr std::size_t kNoMove = std::numeric_limits<std::size_t>::max();

// The TP as lookup tables indexed by IUT labels.
struct TpTables {
  std::vector<std::vector<std::size_t>> on_output;  // [tp state][iut output]
  std::vector<std::size_t> stimulus;                // iut input, or kNoMove
  std::vector<std::size_t> stimulus_target;
};

inline TpTables tabulate(const Iolts& iut, const TestPurpose& tp) {
  const auto& m = tp.model;
  if (!same_token_set(m.inputs, iut.outputs) || !same_token_set(m.outputs, iut.inputs))
    throw AlphabetError("test purpose alphabets {" + join(m.inputs) + "}/{" +
                        join(m.outputs) + "} do not match iut outputs {" +
                        join(iut.outputs) + "} and inputs {" + join(iut.inputs) + "}");
  TpTables t;
  t.on_output.assign(m.size(), std::vector<std::size_t>(iut.outputs.size(), kNoMove));
  t.stimulus.assign(m.size(), kNoMove);
  t.stimulus_target.assign(m.size(), kNoMove);
  for (const auto& tr : m.transitions) {
    const auto& name = m.label_name(tr.label);
    auto l = *iut.find_label(name);
    if (tr.label.kind == LabelKind::input) {
      t.on_output[tr.source][l.index] = tr.target;
    } else if (tr.label.kind == LabelKind::output) {
      if (t.stimulus[tr.source] != kNoMove)
        throw InvalidArgument("test purpose is not output-deterministic");
      t.stimulus[tr.source] = l.index;
      t.stimulus_target[tr.source] = tr.target;
    }
  }
  return t;
}

}  // namespace detail

inline TpResult run_tp(const PreparedIut& prepared, const TestPurpose& tp,
                       std::size_t id = 0) {
  const Iolts& iut = prepared.model();
  const auto tables = detail::tabulate(iut, tp);
  const std::size_t nq = iut.size();
  TpResult result;
  result.id = id;

  struct Node {
    std::size_t t, q;
    std::int64_t parent;
    std::string token;
  };
  std::vector<Node> nodes{{0, iut.initial, -1, {}}};
  std::vector<bool> seen(tp.model.size() * nq, false);
  seen[iut.initial] = true;
  auto witness_of = [&](std::int64_t at, const std::string& last) {
    Word w{last};
    for (; nodes[at].parent >= 0; at = nodes[at].parent) w.push_back(nodes[at].token);
    std::reverse(w.begin(), w.end());
    return w;
  };
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    const std::size_t t = nodes[head].t, q = nodes[head].q;
    if (t == tp.pass) continue;  // pass never reaches fail
    const auto stimulus = tables.stimulus[t];
    bool accepted = false;
    for (auto qc : prepared.closure(q)) {
      for (const auto& mv : prepared.moves(qc)) {
        std::size_t next = detail::kNoMove;
        if (mv.label.kind == LabelKind::input) {
          if (mv.label.index != stimulus) continue;
          accepted = true;
          next = tables.stimulus_target[t];
        } else {
          next = tables.on_output[t][mv.label.index];
        }
        if (next == detail::kNoMove) continue;
        const auto& name = iut.label_name(mv.label);
        if (next == tp.fail) {
          result.verdict = TpVerdict::fail;
          result.witness = witness_of(static_cast<std::int64_t>(head), name);
          return result;
        }
        auto key = next * nq + mv.target;
        if (seen[key]) continue;
        seen[key] = true;
        nodes.push_back({next, mv.target, static_cast<std::int64_t>(head), name});
      }
    }
    if (stimulus != detail::kNoMove && !accepted) result.incomplete = true;
  }
  return result;
}

inline TpResult run_tp(const Iolts& iut, const TestPurpose& tp) {
  return run_tp(PreparedIut(iut), tp);
}

/// Runs every TP (or up to the first failure with fail_fast). Records are
/// in TP order whatever the worker count.
inline RunReport run_fault_model(const Iolts& iut, const std::vector<TestPurpose>& tps,
                                 const RunOptions& options = {}) {
  const auto start = std::chrono::steady_clock::now();
  const PreparedIut prepared(iut);
  std::vector<std::optional<TpResult>> slots(tps.size());
  std::atomic<std::size_t> cursor{0};
  std::atomic<std::size_t> first_fail{std::numeric_limits<std::size_t>::max()};

  auto worker = [&] {
    for (;;) {
      auto i = cursor.fetch_add(1);
      if (i >= tps.size()) return;
      if (options.fail_fast && i > first_fail.load()) continue;
      slots[i] = run_tp(prepared, tps[i], i);
      if (slots[i]->verdict == TpVerdict::fail) {
        auto cur = first_fail.load();
        while (i < cur && !first_fail.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  const unsigned workers =
      std::max(1u, std::min<unsigned>(options.parallel,
                                      static_cast<unsigned>(tps.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  RunReport report;
  const auto stop = options.fail_fast ? first_fail.load() : tps.size();
  for (std::size_t i = 0; i < tps.size() && i <= stop; ++i) {
    if (!slots[i]) break;
    report.tps.push_back(std::move(*slots[i]));
    if (report.tps.back().verdict == TpVerdict::fail) report.passed = false;
  }
  report.elapsed_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

inline RunReport run_fault_model(const Iolts& iut, const FaultModel& model,
                                 const RunOptions& options = {}) {
  return run_fault_model(iut, model.tps, options);
}

/// Verdict of the exhaustive fault model of `g` without materializing it.
/// A TP is a chain that reaches fail exactly when the IUT can perform its
/// path, so the whole model fails iff g × det(iut) reaches the fail node.
/// The witness is a shortest failing path.
inline TpResult run_all_fault_paths(const Iolts& iut_in, const Multigraph& g) {
  const Iolts iut = ensure_quiescence(iut_in);
  const std::vector<std::string> inputs(g.alphabet.begin(), g.alphabet.begin() + g.input_count);
  const std::vector<std::string> outputs(g.alphabet.begin() + g.input_count, g.alphabet.end());
  if (!same_token_set(inputs, iut.inputs) || !same_token_set(outputs, iut.outputs))
    throw AlphabetError("multigraph alphabet {" + join(g.alphabet) +
                        "} does not match the iut's {" + join(iut.observable_alphabet()) + "}");
  const Dfsa di = determinize(iut, g.alphabet);

  struct Node {
    std::size_t v, d;
    std::int64_t parent;
    std::size_t token;
  };
  std::vector<Node> nodes{{g.root(), di.initial(), -1, 0}};
  std::vector<bool> seen(g.node_count() * di.size(), false);
  seen[g.root() * di.size() + di.initial()] = true;
  TpResult result;
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    const auto [v, d, parent, via] = nodes[head];
    for (const auto& e : g.edges[v]) {
      const auto nd = di.next(d, e.token);
      if (nd == Dfsa::kNone) continue;
      if (e.target == g.fail()) {
        Word w{g.alphabet[e.token]};
        for (auto at = static_cast<std::int64_t>(head); nodes[at].parent >= 0;
             at = nodes[at].parent)
          w.push_back(g.alphabet[nodes[at].token]);
        std::reverse(w.begin(), w.end());
        result.verdict = TpVerdict::fail;
        result.witness = std::move(w);
        return result;
      }
      const auto key = e.target * di.size() + static_cast<std::size_t>(nd);
      if (seen[key]) continue;
      seen[key] = true;
      nodes.push_back({e.target, static_cast<std::size_t>(nd),
                       static_cast<std::int64_t>(head), e.token});
    }
  }
  return result;
}

}  // namespace ioconf
