#include "isofib/analyze.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "isofib/cover.hpp"
#include "isofib/errors.hpp"
#include "isofib/hirzebruch_jung.hpp"
#include "isofib/theorem_gate.hpp"

namespace isofib {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::vector<FixRow> fixed_point_table(const SurfaceRecord& rec) {
    const FiniteGroup& G = *rec.group;
    // count fixed points in one pass: each ramification point is fixed by
    // every nontrivial element of its stabilizer
    std::vector<long> f1(G.order(), 0), f2(G.order(), 0);
    auto tally = [&](const GeneratingVector& v, std::vector<long>& counts) {
        for (const auto& p : ramification_points(G, v))
            for (int sigma : G.cyclic_subgroup(p.local_generator))
                if (sigma != G.identity()) ++counts[sigma];
    };
    tally(rec.v1, f1);
    tally(rec.v2, f2);
    std::vector<FixRow> rows;
    for (int g = 0; g < G.order(); ++g) {
        if (g == G.identity() || f1[g] + f2[g] == 0) continue;
        rows.push_back({G.word(g), G.element_order(g), f1[g], f2[g]});
    }
    return rows;
}

}  // namespace

AnalysisReport analyze_record(std::shared_ptr<const FiniteGroup> G, const GeneratingVector& v1,
                              const GeneratingVector& v2, int base_choice,
                              const std::string& group_text) {
    auto t0 = std::chrono::steady_clock::now();
    AnalysisReport r;
    r.rec = make_record(std::move(G), v1, v2);
    const FiniteGroup& group = *r.rec.group;
    r.group_text = group_text;
    r.group_name = group.name();
    r.group_order = group.order();
    r.base_choice = base_choice;
    r.v1_text = format_vector(group, v1);
    r.v2_text = format_vector(group, v2);

    r.inv = compute_invariants(r.rec);
    r.euler_counting = euler_by_counting(r.rec);
    if (r.euler_counting != r.inv.euler)
        throw internal_error("Euler routes disagree: corrections " +
                             std::to_string(r.inv.euler) + " vs counting " +
                             std::to_string(r.euler_counting));
    r.quasi_bundle = is_quasi_bundle(r.rec);
    r.fixed_point_table = fixed_point_table(r.rec);

    std::vector<FibreModel> contracted;
    std::vector<BlowdownTrace> traces;
    for (int bc : {base_choice, base_choice == 2 ? 1 : 2}) {
        const auto& vb = bc == 2 ? r.rec.v2 : r.rec.v1;
        for (size_t bi = 0; bi < vb.data.periods.size(); ++bi) {
            FibreReport fr;
            fr.built = build_fibre(r.rec, bc, static_cast<int>(bi));
            auto [model, trace] = contract_to_relative_minimal(fr.built);
            fr.contracted = model;
            fr.trace = trace;
            fr.delta = fibre_delta(model, trace);
            if (bc == base_choice) {
                r.delta_sum += fr.delta;
                r.beta_total += trace.beta();
                r.fibres.push_back(fr);
            } else {
                r.other_fibres.push_back(fr);
            }
            contracted.push_back(std::move(model));
            traces.push_back(std::move(trace));
        }
    }
    r.ample = ampleness_verdict(r.rec, contracted, traces);
    r.verdict = theorem_check(r.rec, r.inv, base_choice, r.beta_total, r.delta_sum, r.ample);
    r.ms = ms_since(t0);
    return r;
}

AnalysisReport run_analyze(const AnalysisConfig& cfg) {
    if (cfg.groups.size() != 1)
        throw invalid_input("analyze needs exactly one group entry");
    if (cfg.cover1.enumerate || cfg.cover2.enumerate)
        throw invalid_input("analyze needs explicit vectors in both cover blocks");
    auto G = std::make_shared<const FiniteGroup>(build_group(cfg.groups[0],
                                                             cfg.max_group_order));
    auto parse_cover_vector = [&](const CoverConfig& cc) {
        return parse_vector(*G, cc.vector_text, cc.base_genus,
                            cc.periods.empty() ? nullptr : &cc.periods);
    };
    GeneratingVector v1 = parse_cover_vector(cfg.cover1);
    GeneratingVector v2 = parse_cover_vector(cfg.cover2);
    return analyze_record(std::move(G), v1, v2, cfg.base_choice,
                          cfg.group_texts.empty() ? "" : cfg.group_texts[0]);
}

int effective_jobs(const AnalysisConfig& cfg) {
    if (cfg.jobs > 0) return cfg.jobs;
    if (const char* env = std::getenv("ISOFIB_JOBS")) {
        int j = std::atoi(env);
        if (j > 0) return j;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

// per-vector data reused across pair analyses
struct VectorData {
    GeneratingVector v;
    std::vector<std::uint64_t> any_stab;           // union of stabilizer masks
    std::vector<std::vector<std::uint64_t>> stab;  // one mask per ramification point
};

std::vector<std::uint64_t> empty_mask(int order) {
    return std::vector<std::uint64_t>((order + 63) / 64, 0);
}

VectorData vector_data(const FiniteGroup& G, GeneratingVector v) {
    VectorData d;
    d.any_stab = empty_mask(G.order());
    for (const auto& p : ramification_points(G, v)) {
        auto mask = empty_mask(G.order());
        for (int g : G.cyclic_subgroup(p.local_generator))
            mask[g / 64] |= std::uint64_t(1) << (g % 64);
        for (size_t w = 0; w < mask.size(); ++w) d.any_stab[w] |= mask[w];
        d.stab.push_back(std::move(mask));
    }
    d.v = std::move(v);
    return d;
}

// nontrivial common stabilizer possible at all?
bool masks_interact(const FiniteGroup& G, const VectorData& a, const VectorData& b) {
    int nontrivial = 0;
    for (size_t w = 0; w < a.any_stab.size(); ++w) {
        std::uint64_t inter = a.any_stab[w] & b.any_stab[w];
        nontrivial += __builtin_popcountll(inter);
    }
    // the identity sits in every stabilizer
    (void)G;
    return nontrivial > 1;
}

struct BranchingChoice {
    BranchingData data;
    int genus = 0;
    bool enumerated = false;
    std::vector<VectorData> vectors;
};

// all non-increasing period tuples with entries from the group's element
// orders in [2, max_period]
std::vector<BranchingData> branching_candidates(const FiniteGroup& G, int base_genus,
                                                int max_points, int max_period) {
    // periods listed in non-decreasing order, matching the usual notation
    // (2^4, 4); the enumerated tuples then contain any printed reference
    // vector verbatim
    std::vector<int> orders;
    for (int m = 2; m <= max_period; ++m)
        if (!G.elements_of_order(m).empty()) orders.push_back(m);

    std::vector<BranchingData> out;
    std::vector<int> cur;
    auto rec_fill = [&](auto&& self, size_t start) -> void {
        out.push_back({base_genus, cur});
        if (static_cast<int>(cur.size()) == max_points) return;
        for (size_t i = start; i < orders.size(); ++i) {
            cur.push_back(orders[i]);
            self(self, i);
            cur.pop_back();
        }
    };
    rec_fill(rec_fill, 0);
    return out;
}

struct SearchTask {
    size_t group_idx;
    size_t bd1_idx;
    size_t bd2_idx;
};

long ram_count(const FiniteGroup& G, const BranchingData& bd) {
    long r = 0;
    for (int m : bd.periods) r += G.order() / m;
    return r;
}

// Exact identity: 12 chi = 3 E_f + sum over singular points of (e_x - c_x),
// with E_f = 4 (g1-1)(g2-1)/|G|. Given a chi target, bounding e_x - c_x over
// the common stabilizer orders possible for this pair of branching data
// soundly rejects most pairs before any vector is enumerated.
bool chi_prefilter_rejects(const FiniteGroup& G, const BranchingData& b1, int g1,
                           const BranchingData& b2, int g2, long chi_target) {
    Rational ef = Rational(4L * (g1 - 1) * (g2 - 1), G.order());
    std::set<long> common;
    for (int m1 : b1.periods)
        for (int m2 : b2.periods) {
            long g = std::gcd(m1, m2);
            for (long d = 2; d <= g; ++d)
                if (g % d == 0) common.insert(d);
        }
    if (common.empty())  // forced free action: 12 chi = 3 E_f exactly
        return ef != Rational(4) * Rational(chi_target);

    Rational min_ec(0), max_ec(0);
    long d_max = 0;
    for (long d : common) {
        d_max = std::max(d_max, d);
        for (long q = 1; q < d; ++q) {
            if (std::gcd(d, q) != 1) continue;
            auto corr = hj_corrections(hj_expand(d, q));
            Rational ec = corr.e - corr.c;
            min_ec = std::min(min_ec, ec);
            max_ec = std::max(max_ec, ec);
        }
    }
    // every singular point has orbit size >= |G|/d_max inside the at most
    // R1 R2 stabilized points
    Rational s_max = Rational(ram_count(G, b1) * ram_count(G, b2) * d_max, G.order());
    Rational twelve_chi(12L * chi_target);
    if (Rational(3) * ef > twelve_chi - s_max * min_ec) return true;
    if (Rational(3) * ef + s_max * max_ec < twelve_chi) return true;
    return false;
}

}  // namespace

SearchOutcome run_search(const AnalysisConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    SearchOutcome out;

    struct GroupData {
        std::shared_ptr<const FiniteGroup> G;
        std::string text;
        std::vector<BranchingChoice> side1, side2;
    };
    std::vector<GroupData> groups;

    for (size_t gi = 0; gi < cfg.groups.size(); ++gi) {
        GroupData gd;
        gd.G = std::make_shared<const FiniteGroup>(build_group(cfg.groups[gi],
                                                               cfg.max_group_order));
        gd.text = gi < cfg.group_texts.size() ? cfg.group_texts[gi] : "";
        out.groups_scanned++;

        // branching data plus genus per side; vectors are filled in lazily
        // once the task prefilter has decided which data can matter
        auto build_side = [&](const CoverConfig& cc, std::vector<BranchingChoice>& side) {
            std::vector<BranchingData> datas;
            if (cc.enumerate) {
                datas = branching_candidates(*gd.G, cc.base_genus, cc.max_points,
                                             cc.max_period);
            } else {
                try {
                    auto v = parse_vector(*gd.G, cc.vector_text, cc.base_genus,
                                          cc.periods.empty() ? nullptr : &cc.periods);
                    auto res = validate(*gd.G, v);
                    if (!res.ok) {
                        out.skipped.push_back({gd.G->name(), v.data.str(), res.violation});
                        return;
                    }
                    BranchingChoice choice;
                    choice.data = v.data;
                    choice.genus = genus(*gd.G, v);
                    choice.vectors.push_back(vector_data(*gd.G, std::move(v)));
                    choice.enumerated = true;
                    side.push_back(std::move(choice));
                } catch (const invalid_input& e) {
                    out.skipped.push_back({gd.G->name(), cc.vector_text, e.what()});
                }
                return;
            }
            for (const auto& bd : datas) {
                BranchingChoice choice;
                choice.data = bd;
                GeneratingVector probe;
                probe.data = bd;
                try {
                    probe.branch_images.assign(bd.periods.size(), gd.G->identity());
                    choice.genus = genus(*gd.G, probe);
                } catch (const invalid_input&) {
                    continue;  // 2g-2 odd or negative: no cover with this data
                }
                side.push_back(std::move(choice));
            }
        };
        build_side(cfg.cover1, gd.side1);
        build_side(cfg.cover2, gd.side2);
        groups.push_back(std::move(gd));
    }

    // candidate tasks over (group, bd1, bd2), cut down by the genus bound
    // and, when the filters pin chi, by the exact-identity prefilter
    bool have_chi = cfg.filter.pg.has_value() && cfg.filter.q.has_value();
    long chi_target = have_chi ? 1 - *cfg.filter.q + *cfg.filter.pg : 0;
    std::vector<SearchTask> tasks;
    for (size_t gi = 0; gi < groups.size(); ++gi)
        for (size_t i1 = 0; i1 < groups[gi].side1.size(); ++i1) {
            auto& s1 = groups[gi].side1[i1];
            if (s1.genus < cfg.filter.min_genus) continue;
            for (size_t i2 = 0; i2 < groups[gi].side2.size(); ++i2) {
                auto& s2 = groups[gi].side2[i2];
                if (s2.genus < cfg.filter.min_genus) continue;
                if (cfg.filter.q &&
                    s1.data.base_genus + s2.data.base_genus != *cfg.filter.q)
                    continue;
                if (have_chi && chi_prefilter_rejects(*groups[gi].G, s1.data, s1.genus,
                                                      s2.data, s2.genus, chi_target))
                    continue;
                tasks.push_back({gi, i1, i2});
            }
        }

    // enumerate the branching data that survived, dropping tasks whose
    // enumeration blows the node budget (each is recorded, never silent)
    auto ensure_vectors = [&](GroupData& gd, BranchingChoice& choice) {
        if (choice.enumerated) return true;
        choice.enumerated = true;
        EnumerateOptions opts;
        opts.node_budget = cfg.node_budget;
        try {
            for (auto& v : enumerate_vectors(*gd.G, choice.data, opts))
                choice.vectors.push_back(vector_data(*gd.G, std::move(v)));
            return true;
        } catch (const budget_exceeded& e) {
            choice.vectors.clear();
            out.skipped.push_back({gd.G->name(), choice.data.str(), e.what()});
            return false;
        }
    };
    std::vector<SearchTask> live;
    for (const auto& task : tasks) {
        auto& gd = groups[task.group_idx];
        if (!ensure_vectors(gd, gd.side1[task.bd1_idx])) continue;
        if (!ensure_vectors(gd, gd.side2[task.bd2_idx])) continue;
        if (gd.side1[task.bd1_idx].vectors.empty() ||
            gd.side2[task.bd2_idx].vectors.empty())
            continue;
        live.push_back(task);
    }
    tasks = std::move(live);

    std::atomic<size_t> next_task{0};
    std::atomic<long> pairs{0};
    std::mutex out_mutex;
    std::vector<AnalysisReport> reports;
    std::exception_ptr worker_error;

    auto worker = [&]() {
        while (true) {
            size_t ti = next_task.fetch_add(1);
            if (ti >= tasks.size()) return;
            const auto& task = tasks[ti];
            const auto& gd = groups[task.group_idx];
            const auto& s1 = gd.side1[task.bd1_idx];
            const auto& s2 = gd.side2[task.bd2_idx];
            try {
                for (const auto& d1 : s1.vectors)
                    for (const auto& d2 : s2.vectors) {
                        pairs.fetch_add(1, std::memory_order_relaxed);
                        SurfaceRecord rec;
                        rec.group = gd.G;
                        rec.v1 = d1.v;
                        rec.v2 = d2.v;
                        rec.g1 = s1.genus;
                        rec.g2 = s2.genus;
                        rec.base1 = d1.v.data.base_genus;
                        rec.base2 = d2.v.data.base_genus;
                        if (masks_interact(*gd.G, d1, d2))
                            rec.basket = compute_basket(*gd.G, d1.v, d2.v);
                        Invariants inv = compute_invariants(rec);
                        if (cfg.filter.pg && inv.pg != *cfg.filter.pg) continue;
                        if (cfg.filter.q && inv.q != *cfg.filter.q) continue;
                        if (cfg.filter.K2 && inv.K2 != *cfg.filter.K2) continue;
                        AnalysisReport r = analyze_record(gd.G, d1.v, d2.v, cfg.base_choice,
                                                          gd.text);
                        std::lock_guard<std::mutex> lock(out_mutex);
                        reports.push_back(std::move(r));
                    }
            } catch (...) {
                std::lock_guard<std::mutex> lock(out_mutex);
                if (!worker_error) worker_error = std::current_exception();
                return;
            }
        }
    };

    int jobs = std::max(1, effective_jobs(cfg));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (worker_error) std::rethrow_exception(worker_error);

    std::sort(reports.begin(), reports.end(), [](const AnalysisReport& a,
                                                 const AnalysisReport& b) {
        return std::tuple(a.group_name, a.rec.v1.data.str(), a.rec.v2.data.str(), a.v1_text,
                          a.v2_text) < std::tuple(b.group_name, b.rec.v1.data.str(),
                                                  b.rec.v2.data.str(), b.v1_text, b.v2_text);
    });
    out.reports = std::move(reports);
    out.pairs_scanned = pairs.load();
    for (const auto& r : out.reports) {
        bool violation = (r.verdict.applicable &&
                          (!r.verdict.main1_ok || !r.verdict.serrano_tan_ok)) ||
                         (r.verdict.main2_checked && !r.verdict.main2_ok);
        out.any_gate_violation = out.any_gate_violation || violation;
    }
    out.ms = ms_since(t0);
    return out;
}

}  // namespace isofib
