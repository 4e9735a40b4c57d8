#include <algorithm>
#include <cmath>

#include "gf2ramsey/cnf.hpp"

namespace gf2r {

namespace {

// Literal index: 2*v for v, 2*v+1 for -v.
inline std::uint32_t lit_index(int lit) {
    return lit > 0 ? 2U * static_cast<std::uint32_t>(lit) : 2U * static_cast<std::uint32_t>(-lit) + 1U;
}
inline std::uint32_t negate(std::uint32_t l) { return l ^ 1U; }
inline std::uint32_t var_of(std::uint32_t l) { return l >> 1; }

constexpr std::uint32_t kNoReason = 0xFFFFFFFFU;

// Luby sequence 1 1 2 1 1 2 4 ...
double luby(double y, std::uint64_t x) {
    std::uint64_t size = 1;
    int seq = 0;
    while (size < x + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        --seq;
        x %= size;
    }
    return std::pow(y, seq);
}

// Conflict-driven search: watched literals, first-UIP learning with
// minimization, VSIDS, phase saving, Luby restarts and activity-based
// reduction of the learnt database. Fully deterministic.
class Solver {
public:
    Solver(const CnfFormula& f, const SatBudget& budget)
        : nvars_(static_cast<std::uint32_t>(f.variables)), budget_(budget), deadline_(budget.max_seconds) {
        value_.assign(nvars_ + 1, kUnassigned);
        level_.assign(nvars_ + 1, 0);
        reason_.assign(nvars_ + 1, kNoReason);
        activity_.assign(nvars_ + 1, 0.0);
        phase_.assign(nvars_ + 1, 1);
        seen_.assign(nvars_ + 1, 0);
        heap_pos_.assign(nvars_ + 1, -1);
        watches_.resize(2 * (nvars_ + 1));
        // Initial activity from occurrence counts, so the first decisions
        // favour busy variables; positive phase first.
        for (const auto& cl : f.clauses) {
            for (int lit : cl) activity_[var_of(lit_index(lit))] += 1e-6;
        }
        for (std::uint32_t v = 1; v <= nvars_; ++v) heap_insert(v);
        for (const auto& cl : f.clauses) {
            std::vector<std::uint32_t> lits;
            for (int lit : cl) lits.push_back(lit_index(lit));
            std::sort(lits.begin(), lits.end());
            lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
            bool tautology = false;
            for (std::size_t i = 0; i + 1 < lits.size(); ++i) {
                if (var_of(lits[i]) == var_of(lits[i + 1])) tautology = true;
            }
            if (tautology) continue;
            if (lits.empty()) {
                trivially_unsat_ = true;
            } else if (lits.size() == 1) {
                units_.push_back(lits[0]);
            } else {
                add_clause(std::move(lits), false);
            }
        }
    }

    SatResult solve() {
        SatResult res;
        res.status = run();
        if (res.status == SatStatus::Sat) {
            res.model.assign(nvars_ + 1, false);
            for (std::uint32_t v = 1; v <= nvars_; ++v) res.model[v] = value_[v] == kTrue;
        }
        res.decisions = decisions_;
        res.conflicts = conflicts_;
        res.propagations = propagations_;
        return res;
    }

private:
    static constexpr std::int8_t kUnassigned = -1;
    static constexpr std::int8_t kFalse = 0;
    static constexpr std::int8_t kTrue = 1;

    struct Clause {
        std::vector<std::uint32_t> lits;
        double activity = 0;
        bool learnt = false;
        bool removed = false;
    };

    SatStatus run() {
        if (trivially_unsat_) return SatStatus::Unsat;
        for (auto l : units_) {
            if (!enqueue(l, kNoReason)) return SatStatus::Unsat;
        }
        if (propagate() != kNoReason) return SatStatus::Unsat;
        max_learnts_ = std::max<double>(static_cast<double>(clauses_.size()) / 3.0, 2000.0);
        for (std::uint64_t restart = 0;; ++restart) {
            const auto limit = static_cast<std::uint64_t>(luby(2.0, restart) * 100.0);
            const SatStatus st = search(limit);
            if (st != SatStatus::Unknown || stopped_) return st;
        }
    }

    // Searches until `limit` conflicts; Unknown means restart (or stop if stopped_).
    SatStatus search(std::uint64_t limit) {
        std::uint64_t local = 0;
        std::vector<std::uint32_t> learnt;
        while (true) {
            const std::uint32_t confl = propagate();
            if (confl != kNoReason) {
                ++conflicts_;
                ++local;
                if (decision_level() == 0) return SatStatus::Unsat;
                int bt = 0;
                analyze(confl, learnt, bt);
                cancel_until(bt);
                if (learnt.size() == 1) {
                    enqueue(learnt[0], kNoReason);
                } else {
                    const std::uint32_t ci = add_clause(learnt, true);
                    bump_clause(ci);
                    enqueue(learnt[0], ci);
                }
                var_inc_ /= 0.95;
                cla_inc_ /= 0.999;
                if (conflicts_ > budget_.max_conflicts ||
                    ((conflicts_ & 0x3FF) == 0 && deadline_.expired())) {
                    stopped_ = true;
                    return SatStatus::Unknown;
                }
                continue;
            }
            if (local >= limit) {
                cancel_until(0);
                return SatStatus::Unknown;
            }
            if (static_cast<double>(learnt_count_) - static_cast<double>(trail_.size()) >= max_learnts_) {
                reduce_db();
                max_learnts_ *= 1.1;
            }
            std::uint32_t next = 0;
            while (!heap_.empty()) {
                const std::uint32_t v = heap_pop();
                if (value_[v] == kUnassigned) {
                    next = v;
                    break;
                }
            }
            if (next == 0) return SatStatus::Sat;
            ++decisions_;
            trail_lim_.push_back(trail_.size());
            enqueue(phase_[next] ? 2U * next : 2U * next + 1U, kNoReason);
        }
    }

    int decision_level() const { return static_cast<int>(trail_lim_.size()); }

    std::int8_t lit_value(std::uint32_t l) const {
        const std::int8_t v = value_[var_of(l)];
        if (v == kUnassigned) return kUnassigned;
        return (l & 1U) ? static_cast<std::int8_t>(1 - v) : v;
    }

    bool enqueue(std::uint32_t l, std::uint32_t reason) {
        const std::int8_t v = lit_value(l);
        if (v != kUnassigned) return v == kTrue;
        const std::uint32_t x = var_of(l);
        value_[x] = (l & 1U) ? kFalse : kTrue;
        level_[x] = decision_level();
        reason_[x] = reason;
        trail_.push_back(l);
        return true;
    }

    std::uint32_t add_clause(std::vector<std::uint32_t> lits, bool learnt) {
        const auto idx = static_cast<std::uint32_t>(clauses_.size());
        watches_[lits[0]].push_back(idx);
        watches_[lits[1]].push_back(idx);
        clauses_.push_back(Clause{std::move(lits), 0.0, learnt, false});
        if (learnt) ++learnt_count_;
        return idx;
    }

    void cancel_until(int lvl) {
        if (decision_level() <= lvl) return;
        const std::size_t start = trail_lim_[static_cast<std::size_t>(lvl)];
        for (std::size_t i = trail_.size(); i-- > start;) {
            const std::uint32_t x = var_of(trail_[i]);
            phase_[x] = value_[x] == kTrue ? 1 : 0;
            value_[x] = kUnassigned;
            reason_[x] = kNoReason;
            if (heap_pos_[x] < 0) heap_insert(x);
        }
        trail_.resize(start);
        trail_lim_.resize(static_cast<std::size_t>(lvl));
        qhead_ = std::min(qhead_, start);
    }

    // Returns the conflicting clause or kNoReason.
    std::uint32_t propagate() {
        while (qhead_ < trail_.size()) {
            const std::uint32_t falsified = negate(trail_[qhead_++]);
            ++propagations_;
            auto& ws = watches_[falsified];
            std::size_t keep = 0;
            for (std::size_t i = 0; i < ws.size(); ++i) {
                const std::uint32_t ci = ws[i];
                Clause& c = clauses_[ci];
                if (c.removed) continue;
                auto& cl = c.lits;
                if (cl[0] == falsified) std::swap(cl[0], cl[1]);
                if (lit_value(cl[0]) == kTrue) {
                    ws[keep++] = ci;
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < cl.size(); ++k) {
                    if (lit_value(cl[k]) != kFalse) {
                        std::swap(cl[1], cl[k]);
                        watches_[cl[1]].push_back(ci);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                ws[keep++] = ci;
                if (!enqueue(cl[0], ci)) {
                    for (std::size_t j = i + 1; j < ws.size(); ++j) ws[keep++] = ws[j];
                    ws.resize(keep);
                    qhead_ = trail_.size();
                    return ci;
                }
            }
            ws.resize(keep);
        }
        return kNoReason;
    }

    void analyze(std::uint32_t confl, std::vector<std::uint32_t>& out, int& bt_level) {
        out.assign(1, 0);
        int pending = 0;
        std::uint32_t p = 0;
        bool have_p = false;
        std::size_t idx = trail_.size();
        do {
            Clause& c = clauses_[confl];
            if (c.learnt) bump_clause(confl);
            for (std::size_t j = have_p ? 1 : 0; j < c.lits.size(); ++j) {
                const std::uint32_t q = c.lits[j];
                const std::uint32_t x = var_of(q);
                if (seen_[x] || level_[x] == 0) continue;
                seen_[x] = 1;
                bump_var(x);
                if (level_[x] >= decision_level()) {
                    ++pending;
                } else {
                    out.push_back(q);
                }
            }
            while (!seen_[var_of(trail_[--idx])]) {}
            p = trail_[idx];
            confl = reason_[var_of(p)];
            seen_[var_of(p)] = 0;
            --pending;
            have_p = true;
            // The reason clause lists p first.
            if (confl != kNoReason && clauses_[confl].lits[0] != p) {
                auto& rl = clauses_[confl].lits;
                std::swap(*std::find(rl.begin(), rl.end(), p), rl[0]);
            }
        } while (pending > 0);
        out[0] = negate(p);

        // Drop literals implied by the rest of the clause.
        to_clear_.assign(out.begin(), out.end());
        std::size_t keep = 1;
        for (std::size_t i = 1; i < out.size(); ++i) {
            if (reason_[var_of(out[i])] == kNoReason || !redundant(out[i])) out[keep++] = out[i];
        }
        out.resize(keep);
        for (auto l : to_clear_) seen_[var_of(l)] = 0;

        bt_level = 0;
        if (out.size() > 1) {
            std::size_t best = 1;
            for (std::size_t i = 2; i < out.size(); ++i) {
                if (level_[var_of(out[i])] > level_[var_of(out[best])]) best = i;
            }
            std::swap(out[1], out[best]);
            bt_level = level_[var_of(out[1])];
        }
    }

    // True if literal l is implied by seen literals (recursive, iterative stack).
    bool redundant(std::uint32_t l) {
        stack_.assign(1, l);
        const std::size_t top = to_clear_.size();
        while (!stack_.empty()) {
            const std::uint32_t q = stack_.back();
            stack_.pop_back();
            const Clause& c = clauses_[reason_[var_of(q)]];
            for (std::size_t j = 1; j < c.lits.size(); ++j) {
                const std::uint32_t r = c.lits[j];
                const std::uint32_t x = var_of(r);
                if (seen_[x] || level_[x] == 0) continue;
                if (reason_[x] == kNoReason) {
                    for (std::size_t k = top; k < to_clear_.size(); ++k) seen_[var_of(to_clear_[k])] = 0;
                    to_clear_.resize(top);
                    return false;
                }
                seen_[x] = 1;
                stack_.push_back(r);
                to_clear_.push_back(r);
            }
        }
        return true;
    }

    void reduce_db() {
        std::vector<std::uint32_t> cand;
        for (std::uint32_t i = 0; i < clauses_.size(); ++i) {
            const Clause& c = clauses_[i];
            if (!c.learnt || c.removed || c.lits.size() <= 2) continue;
            const std::uint32_t x = var_of(c.lits[0]);
            if (reason_[x] == i && value_[x] != kUnassigned) continue;  // locked
            cand.push_back(i);
        }
        std::stable_sort(cand.begin(), cand.end(),
                         [&](std::uint32_t a, std::uint32_t b) { return clauses_[a].activity < clauses_[b].activity; });
        for (std::size_t i = 0; i < cand.size() / 2; ++i) {
            clauses_[cand[i]].removed = true;
            clauses_[cand[i]].lits.clear();
            clauses_[cand[i]].lits.shrink_to_fit();
            --learnt_count_;
        }
    }

    void bump_clause(std::uint32_t ci) {
        if ((clauses_[ci].activity += cla_inc_) > 1e20) {
            for (auto& c : clauses_) {
                if (c.learnt) c.activity *= 1e-20;
            }
            cla_inc_ *= 1e-20;
        }
    }

    void bump_var(std::uint32_t x) {
        if ((activity_[x] += var_inc_) > 1e100) {
            for (auto& a : activity_) a *= 1e-100;
            var_inc_ *= 1e-100;
        }
        if (heap_pos_[x] >= 0) heap_up(static_cast<std::size_t>(heap_pos_[x]));
    }

    // Max-heap on activity; ties broken by lower variable index.
    bool heap_less(std::uint32_t a, std::uint32_t b) const {
        return activity_[a] > activity_[b] || (activity_[a] == activity_[b] && a < b);
    }
    void heap_insert(std::uint32_t x) {
        heap_pos_[x] = static_cast<int>(heap_.size());
        heap_.push_back(x);
        heap_up(heap_.size() - 1);
    }
    void heap_up(std::size_t i) {
        const std::uint32_t x = heap_[i];
        while (i > 0) {
            const std::size_t parent = (i - 1) / 2;
            if (!heap_less(x, heap_[parent])) break;
            heap_[i] = heap_[parent];
            heap_pos_[heap_[i]] = static_cast<int>(i);
            i = parent;
        }
        heap_[i] = x;
        heap_pos_[x] = static_cast<int>(i);
    }
    std::uint32_t heap_pop() {
        const std::uint32_t top = heap_[0];
        const std::uint32_t last = heap_.back();
        heap_.pop_back();
        heap_pos_[top] = -1;
        if (!heap_.empty()) {
            std::size_t i = 0;
            while (true) {
                std::size_t child = 2 * i + 1;
                if (child >= heap_.size()) break;
                if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child])) ++child;
                if (!heap_less(heap_[child], last)) break;
                heap_[i] = heap_[child];
                heap_pos_[heap_[i]] = static_cast<int>(i);
                i = child;
            }
            heap_[i] = last;
            heap_pos_[last] = static_cast<int>(i);
        }
        return top;
    }

    std::uint32_t nvars_;
    SatBudget budget_;
    Deadline deadline_;
    bool trivially_unsat_ = false;
    bool stopped_ = false;
    std::vector<std::int8_t> value_;
    std::vector<int> level_;
    std::vector<std::uint32_t> reason_;
    std::vector<double> activity_;
    std::vector<std::int8_t> phase_;
    std::vector<std::int8_t> seen_;
    std::vector<int> heap_pos_;
    std::vector<std::uint32_t> heap_;
    std::vector<Clause> clauses_;
    std::vector<std::vector<std::uint32_t>> watches_;
    std::vector<std::uint32_t> units_;
    std::vector<std::uint32_t> trail_;
    std::vector<std::size_t> trail_lim_;
    std::vector<std::uint32_t> stack_;
    std::vector<std::uint32_t> to_clear_;
    std::size_t qhead_ = 0;
    std::size_t learnt_count_ = 0;
    double max_learnts_ = 0;
    double var_inc_ = 1.0;
    double cla_inc_ = 1.0;
    std::uint64_t decisions_ = 0;
    std::uint64_t conflicts_ = 0;
    std::uint64_t propagations_ = 0;
};

}  // namespace

SatResult sat_solve(const CnfFormula& f, const SatBudget& budget) {
    Solver s(f, budget);
    return s.solve();
}

}  // namespace gf2r
