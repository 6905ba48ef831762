#include "isofib/fibre.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "isofib/errors.hpp"
#include "isofib/hirzebruch_jung.hpp"

namespace isofib {

namespace {

int inverse_mod(int a, int n) {
    if (n == 1) return 0;
    for (int t = 1; t < n; ++t)
        if (static_cast<long>(t) * a % n == 1) return t;
    throw internal_error("inverse_mod: residue not invertible");
}

}  // namespace

long FibreModel::fibre_k_degree() const {
    long kf = 0;
    for (size_t i = 0; i < comps.size(); ++i)
        if (comps[i].alive) kf += comps[i].mult * comps[i].k_deg;
    return kf;
}

void check_fibre_class(const FibreModel& f) {
    size_t n = f.comps.size();
    for (size_t i = 0; i < n; ++i) {
        if (!f.comps[i].alive) continue;
        long dot = f.comps[i].mult * f.comps[i].self;
        for (size_t j = 0; j < n; ++j)
            if (j != i && f.comps[j].alive) dot += f.comps[j].mult * f.inter[i][j];
        if (dot != 0)
            throw internal_error("fibre class is not numerically trivial on component " +
                                 f.comps[i].label);
    }
    if (f.fibre_k_degree() != 2L * f.fibre_genus - 2)
        throw internal_error("K.F != 2g(fibre)-2");
    // F.Z = 0 for every component implies F^2 = 0; recompute anyway
    long f2 = 0;
    for (size_t i = 0; i < n; ++i) {
        if (!f.comps[i].alive) continue;
        f2 += f.comps[i].mult * f.comps[i].mult * f.comps[i].self;
        for (size_t j = i + 1; j < n; ++j)
            if (f.comps[j].alive) f2 += 2 * f.comps[i].mult * f.comps[j].mult * f.inter[i][j];
    }
    if (f2 != 0) throw internal_error("F^2 != 0");
}

FibreModel build_fibre(const SurfaceRecord& rec, int base_choice, int branch_index) {
    if (base_choice != 1 && base_choice != 2)
        throw invalid_input("base_choice must be 1 or 2");
    const FiniteGroup& G = *rec.group;
    const GeneratingVector& vb = base_choice == 2 ? rec.v2 : rec.v1;
    const GeneratingVector& vf = base_choice == 2 ? rec.v1 : rec.v2;

    FibreModel f;
    f.base_choice = base_choice;
    f.branch_index = branch_index;
    f.fibre_genus = base_choice == 2 ? rec.g1 : rec.g2;

    if (branch_index < 0) {  // general fibre
        f.m = 1;
        f.comps.push_back({"Y", 1, 0, 2L * f.fibre_genus - 2, f.fibre_genus, true});
        f.inter.assign(1, std::vector<long>(1, 0));
        f.rh_central_genus = f.fibre_genus;
        check_fibre_class(f);
        return f;
    }
    if (static_cast<size_t>(branch_index) >= vb.data.periods.size())
        throw invalid_input("branch index out of range for the chosen base");
    f.m = vb.data.periods[branch_index];

    struct PlannedString {
        SingularityType type;
        long q_att;
        std::vector<long> b;
        std::vector<long> mult;
        Rational B;
    };
    std::vector<PlannedString> planned;
    for (const auto& entry : rec.basket.entries) {
        int assigned = base_choice == 2 ? entry.fibre2_index : entry.fibre1_index;
        if (assigned != branch_index) continue;
        long n = entry.type.n;
        if (f.m % n != 0)
            throw internal_error("singular point stabilizer order does not divide the period");
        long q_att = base_choice == 2 ? entry.type.q : inverse_mod(entry.type.q, entry.type.n);
        auto exp = hj_expand(n, q_att);
        size_t k = exp.b.size();
        // continuants P_j of [b_j..b_k]; the multiplicity of the j-th curve
        // in F is (m/n) P_{j+1}, and F.Z = 0 forces exactly this solution.
        std::vector<long> P(k + 2, 0);
        P[k + 1] = 0;
        P[k] = 1;
        for (size_t j = k; j-- > 0;) P[j] = exp.b[j] * P[j + 1] - P[j + 2];
        if (P[0] != n) throw internal_error("continuant identity failed in string solve");
        std::vector<long> mult(k);
        for (size_t j = 0; j < k; ++j) {
            mult[j] = (f.m / n) * P[j + 1];
            if (mult[j] <= 0) throw internal_error("non-positive string multiplicity");
        }
        planned.push_back({entry.type, q_att, exp.b, std::move(mult),
                           hj_corrections(exp).B});
    }
    // label strings A, B, C ... ordered by descending multiplicity at the
    // attachment end (matches the usual figure layout), then by type
    std::sort(planned.begin(), planned.end(), [](const auto& a, const auto& b) {
        return std::tuple(-a.mult[0], -static_cast<long>(a.b.size()), a.type) <
               std::tuple(-b.mult[0], -static_cast<long>(b.b.size()), b.type);
    });

    f.comps.push_back({"Y", f.m, 0, 0, 0, true});  // filled in below
    // strings of equal type share a letter with running curve numbers, so a
    // fibre with four A1-type points reads 4Y + A1 + A2 + A3 + A4
    size_t letter_idx = 0;
    int curve_no = 0;
    for (size_t s = 0; s < planned.size(); ++s) {
        if (s > 0 && !(planned[s].type == planned[s - 1].type)) {
            ++letter_idx;
            curve_no = 0;
        }
        std::string letter;
        size_t idx = letter_idx;
        do {
            letter.insert(letter.begin(), static_cast<char>('A' + idx % 26));
            idx = idx / 26;
        } while (idx-- > 0);
        FibreString fs;
        fs.type = planned[s].type;
        fs.q_att = planned[s].q_att;
        fs.B = planned[s].B;
        for (size_t j = 0; j < planned[s].b.size(); ++j) {
            fs.comps.push_back(static_cast<int>(f.comps.size()));
            f.comps.push_back({letter + std::to_string(++curve_no), planned[s].mult[j],
                               -planned[s].b[j], planned[s].b[j] - 2, 0, true});
        }
        f.strings.push_back(std::move(fs));
    }

    size_t n_comp = f.comps.size();
    f.inter.assign(n_comp, std::vector<long>(n_comp, 0));
    for (const auto& fs : f.strings) {
        f.inter[0][fs.comps[0]] = f.inter[fs.comps[0]][0] = 1;  // Y meets the head
        for (size_t j = 0; j + 1 < fs.comps.size(); ++j)
            f.inter[fs.comps[j]][fs.comps[j + 1]] = f.inter[fs.comps[j + 1]][fs.comps[j]] = 1;
    }

    // central data from F.Y = 0 and K.F = 2g-2
    long head_sum = 0, k_strings = 0;
    for (const auto& fs : f.strings) {
        head_sum += f.comps[fs.comps[0]].mult;
        for (int ci : fs.comps) k_strings += f.comps[ci].mult * f.comps[ci].k_deg;
    }
    if (head_sum % f.m != 0)
        throw internal_error("no integral self-intersection for the central component");
    f.comps[0].self = -head_sum / f.m;
    long kf_target = 2L * f.fibre_genus - 2;
    if ((kf_target - k_strings) % f.m != 0)
        throw internal_error("no integral K-degree for the central component");
    f.comps[0].k_deg = (kf_target - k_strings) / f.m;
    long twice_genus = f.comps[0].self + f.comps[0].k_deg + 2;
    if (twice_genus % 2 != 0 || twice_genus < 0)
        throw internal_error("central component genus fails adjunction");
    f.comps[0].genus = twice_genus / 2;

    // Riemann-Hurwitz cross-check: the central curve is (fibre curve)/H
    // with H generated by the branch image of the base cover.
    {
        int h = vb.branch_images[branch_index];
        auto sub_h = G.cyclic_subgroup(h);
        long ram = 0;
        for (const auto& p : ramification_points(G, vf)) {
            auto stab = G.cyclic_subgroup(p.local_generator);
            std::vector<int> common;
            std::set_intersection(sub_h.begin(), sub_h.end(), stab.begin(), stab.end(),
                                  std::back_inserter(common));
            ram += static_cast<long>(common.size()) - 1;
        }
        long rhs = 2L * f.fibre_genus - 2 - ram;
        if (rhs % f.m == 0 && ((rhs / f.m) + 2) % 2 == 0 && (rhs / f.m) + 2 >= 0) {
            f.rh_central_genus = (rhs / f.m + 2) / 2;
        } else {
            f.rh_central_genus = -1;
        }
        f.genus_routes_agree = f.rh_central_genus == f.comps[0].genus;
    }

    check_fibre_class(f);
    return f;
}

std::pair<FibreModel, BlowdownTrace> contract_to_relative_minimal(FibreModel f) {
    BlowdownTrace trace;
    size_t n = f.comps.size();
    while (true) {
        int target = -1;
        for (size_t i = 0; i < n; ++i) {
            auto& cp = f.comps[i];
            if (cp.alive && cp.self == -1 && cp.k_deg == -1) {
                if (cp.genus != 0)
                    throw internal_error("component with K = self = -1 has positive genus");
                target = static_cast<int>(i);
                break;
            }
        }
        if (target < 0) break;
        trace.steps.push_back({f.comps[target].label, target});
        std::vector<long> meet(n, 0);
        for (size_t i = 0; i < n; ++i)
            if (f.comps[i].alive && static_cast<int>(i) != target) meet[i] = f.inter[i][target];
        f.comps[target].alive = false;
        for (size_t i = 0; i < n; ++i) {
            if (!f.comps[i].alive || meet[i] == 0) continue;
            f.comps[i].self += meet[i] * meet[i];
            f.comps[i].k_deg -= meet[i];
        }
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) {
                if (!f.comps[i].alive || !f.comps[j].alive) continue;
                f.inter[i][j] += meet[i] * meet[j];
                f.inter[j][i] = f.inter[i][j];
            }
        for (size_t i = 0; i < n; ++i) f.inter[i][target] = f.inter[target][i] = 0;
        check_fibre_class(f);
    }
    return {std::move(f), std::move(trace)};
}

Rational fibre_delta(const FibreModel& contracted, const BlowdownTrace& trace) {
    Rational d;
    for (const auto& fs : contracted.strings) d += fs.B;
    d -= Rational(trace.beta());
    return d;
}

AmplenessVerdict ampleness_verdict(const SurfaceRecord& rec,
                                   const std::vector<FibreModel>& contracted,
                                   const std::vector<BlowdownTrace>& traces) {
    AmplenessVerdict v;
    long beta = 0;
    for (const auto& t : traces) beta += t.beta();
    v.minimal = beta == 0;
    v.K_ample = true;
    for (const auto& f : contracted)
        for (const auto& cp : f.comps)
            if (cp.alive && cp.k_deg <= 0) v.K_ample = false;
    v.canonical_model_is_T = v.minimal;
    for (const auto& entry : rec.basket.entries)
        if (!is_rdp(hj_expand(entry.type.n, entry.type.q))) v.canonical_model_is_T = false;
    return v;
}

std::string fibre_class_str(const FibreModel& f) {
    std::ostringstream os;
    bool first = true;
    for (const auto& cp : f.comps) {
        if (!cp.alive) continue;
        if (!first) os << " + ";
        first = false;
        if (cp.mult != 1) os << cp.mult;
        os << cp.label;
    }
    return os.str();
}

std::string fibre_diagram(const FibreModel& f) {
    std::ostringstream os;
    os << "F = " << fibre_class_str(f);
    if (f.branch_index >= 0)
        os << "   (over branch point " << f.branch_index + 1 << " of "
           << (f.base_choice == 2 ? "C2/G" : "C1/G") << ", multiplicity " << f.m << ")";
    os << "\n";
    auto line = [&](const FibreComponent& cp, const std::string& prefix) {
        os << prefix << cp.label << "  mult " << cp.mult << "  self " << cp.self << "  K "
           << cp.k_deg;
        if (cp.genus > 0) os << "  genus " << cp.genus;
        os << "\n";
    };
    if (f.comps[f.central].alive) line(f.comps[f.central], "  ");
    for (const auto& fs : f.strings) {
        int depth = 0;
        for (int ci : fs.comps) {
            if (!f.comps[ci].alive) continue;
            std::string prefix = "  ";
            for (int d = 0; d < depth; ++d) prefix += "    ";
            prefix += "+-- ";
            line(f.comps[ci], prefix);
            ++depth;
        }
    }
    return os.str();
}

}  // namespace isofib
