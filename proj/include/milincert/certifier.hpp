#pragma once

#include <ctime>
#include <fstream>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "milincert/jacobi.hpp"
#include "milincert/sturm.hpp"
#include "milincert/weights.hpp"

#ifndef MILINCERT_DATA_DIR
#define MILINCERT_DATA_DIR "data"
#endif

namespace milincert {

// Q_k(x) = sum_{j=0}^{N-k} nu_{j+k} P_j^{(2k,0)}(x), exact.
inline RatPoly build_Q(const DerivedSeq& seq, long k) {
    long N = seq.cutoff();
    if (k < 1 || k > N) throw std::invalid_argument("build_Q: need 1 <= k <= N");
    RatPoly acc;
    for (long j = 0; j <= N - k; ++j)
        acc = acc + seq.nu(j + k) * jacobi_poly(j, Rat(2 * k), Rat(0));
    return acc;
}

enum class Verdict { Certified, Failed, Indeterminate };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Certified: return "CERTIFIED";
        case Verdict::Failed: return "FAILED";
        default: return "INDETERMINATE";
    }
}

struct ConditionII {
    long k = 0;
    RatPoly Q;
    int roots_in_interval = 0;
    bool pass = false;
    PositivityResult detail;
};

struct CertificateReport {
    std::string family;
    long N = 0;

    bool cond0 = false;
    Rat p_next;  // p_{N+1}

    bool cond_i = false;
    std::optional<long> tail_n0;
    long checked_window = 0;

    std::vector<Rat> v;  // v_1..v_N
    bool necessary_ok = false;

    std::vector<ConditionII> cond_ii;

    Verdict verdict = Verdict::Indeterminate;
    std::string reason;

    // Equality-case metadata: the certified inequality is sharp exactly for
    // rotations of z/(1-z)^2.
    static constexpr const char* equality_case = "rotations of the Koebe function";

    nlohmann::json to_json(bool with_timestamp = false) const;
};

// Full certification pipeline: (0) p_{N+1} > 0; necessary pre-filter
// v_k >= 0; (i) tail certificate covering n > N; (ii) exact positivity of
// each Q_k on (-1, 1).
inline CertificateReport certify(const WeightFamily& fam, long N) {
    if (!rational_valued(fam))
        throw std::domain_error("certification requires a rational-valued family");
    DerivedSeq seq(fam, N);
    CertificateReport rep;
    rep.family = family_label(fam);
    rep.N = N;

    rep.p_next = seq.p(N + 1);
    rep.cond0 = rep.p_next > 0;
    if (!rep.cond0) {
        rep.verdict = Verdict::Failed;
        rep.reason = "condition (0): p_{N+1} <= 0";
    }

    rep.necessary_ok = true;
    for (long k = 1; k <= N; ++k) {
        rep.v.push_back(seq.v(k));
        if (rep.v.back() < 0 && rep.necessary_ok) {
            rep.necessary_ok = false;
            if (rep.reason.empty()) {
                rep.verdict = Verdict::Failed;
                rep.reason = "necessary condition: v_" + std::to_string(k) + " < 0";
            }
        }
    }

    // condition (i): lambda_n >= 0 for all n > N. Analytic threshold N0
    // covers n >= N0; the finite gap N < n < N0 is checked exactly.
    rep.tail_n0 = tail_certificate(fam);
    if (!rep.tail_n0) {
        rep.cond_i = false;
        if (rep.reason.empty()) {
            rep.verdict = Verdict::Indeterminate;
            rep.reason = "condition (i): no analytic tail certificate for this family";
        }
    } else {
        rep.cond_i = true;
        for (long n = N + 1; n < *rep.tail_n0; ++n) {
            ++rep.checked_window;
            if (seq.lambda(n) < 0) {
                rep.cond_i = false;
                if (rep.reason.empty()) {
                    rep.verdict = Verdict::Failed;
                    rep.reason = "condition (i): lambda_" + std::to_string(n) + " < 0";
                }
                break;
            }
        }
    }

    for (long k = 1; k <= N; ++k) {
        ConditionII c;
        c.k = k;
        c.Q = build_Q(seq, k);
        c.detail = certify_positive(c.Q, Rat(-1), Rat(1));
        c.roots_in_interval = count_real_roots(c.Q, Rat(-1), Rat(1));
        c.pass = c.detail.positive;
        if (!c.pass && rep.reason.empty()) {
            rep.verdict = Verdict::Failed;
            rep.reason = "condition (ii): Q_" + std::to_string(k) + " not positive on (-1,1)";
        }
        rep.cond_ii.push_back(std::move(c));
    }

    if (rep.reason.empty()) {
        bool all_ii = true;
        for (const auto& c : rep.cond_ii) all_ii &= c.pass;
        if (rep.cond0 && rep.cond_i && rep.necessary_ok && all_ii) {
            rep.verdict = Verdict::Certified;
            rep.reason = "all conditions verified";
        } else {
            rep.verdict = Verdict::Indeterminate;
            rep.reason = "inconsistent condition state";
        }
    }
    return rep;
}

inline nlohmann::json CertificateReport::to_json(bool with_timestamp) const {
    nlohmann::json j;
    j["family"] = family;
    j["N"] = N;
    j["verdict"] = verdict_name(verdict);
    j["reason"] = reason;
    j["equality_case"] = equality_case;
    j["condition0"] = {{"pass", cond0}, {"p_next", rat_to_string(p_next)}};
    nlohmann::json ji = {{"pass", cond_i}, {"checked_window", checked_window}};
    if (tail_n0) ji["tail_N0"] = *tail_n0;
    j["condition_i"] = ji;
    nlohmann::json jv = nlohmann::json::array();
    for (size_t k = 0; k < v.size(); ++k)
        jv.push_back({{"k", k + 1}, {"value", rat_to_string(v[k])}, {"sign", rat_sign(v[k])}});
    j["necessary_v"] = {{"pass", necessary_ok}, {"values", jv}};
    nlohmann::json jii = nlohmann::json::array();
    for (const auto& c : cond_ii) {
        nlohmann::json e;
        e["k"] = c.k;
        e["Q"] = c.Q.to_json();
        e["roots_in_interval"] = c.roots_in_interval;
        e["pass"] = c.pass;
        if (c.detail.root_interval)
            e["witness_root_interval"] = {rat_to_string(c.detail.root_interval->first),
                                          rat_to_string(c.detail.root_interval->second)};
        if (c.detail.bad_sample) {
            e["witness_sample"] = rat_to_string(*c.detail.bad_sample);
            e["witness_value"] = rat_to_string(c.Q.eval(*c.detail.bad_sample));
        }
        jii.push_back(e);
    }
    j["condition_ii"] = jii;
    if (with_timestamp) j["timestamp"] = static_cast<long>(::time(nullptr));
    return j;
}

// Distinct-real-root counts of Q_k split at -1 and 1.
struct RootProfile {
    long k = 0;
    int total_real_roots = 0;
    int roots_left_of_minus1 = 0;   // (-inf, -1]
    int roots_in_unit_interval = 0; // (-1, 1)
    int roots_right_of_one = 0;     // [1, +inf)
};

inline RootProfile root_profile(const DerivedSeq& seq, long k) {
    RatPoly Q = build_Q(seq, k);
    RootProfile rp;
    rp.k = k;
    if (Q.degree() < 1) return rp;
    SturmChain s(Q);
    rp.total_real_roots = s.count_all();
    rp.roots_left_of_minus1 = s.count_below(Rat(-1));
    rp.roots_in_unit_interval = s.count_open(Rat(-1), Rat(1));
    rp.roots_right_of_one = s.count_above(Rat(1));
    return rp;
}

struct AppendixDiff {
    bool ok = true;
    int matched = 0;
    std::vector<std::string> mismatches;  // "Q_k coeff i: built ... vs table ..."
};

namespace detail {

inline nlohmann::json load_appendix_tables(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open appendix table file: " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

}  // namespace detail

// Rebuilds every Q_k of the named table from scratch and compares it
// coefficient-by-coefficient against the transcribed literals.
inline AppendixDiff verify_appendix(const std::string& table_id,
                                    const std::string& data_path =
                                        std::string(MILINCERT_DATA_DIR) + "/appendix_tables.json") {
    nlohmann::json tables = detail::load_appendix_tables(data_path);
    if (!tables.contains(table_id))
        throw std::invalid_argument("unknown appendix table: " + table_id);
    const auto& tab = tables[table_id];
    WeightFamily fam = parse_family(tab["family"].get<std::string>());
    long N = tab["N"].get<long>();
    DerivedSeq seq(fam, N);

    AppendixDiff diff;
    for (long k = 1; k <= N; ++k) {
        RatPoly built = build_Q(seq, k);
        RatPoly table = RatPoly::from_json(tab["Q"][std::to_string(k)]);
        if (built == table) {
            ++diff.matched;
            continue;
        }
        diff.ok = false;
        int dmax = std::max(built.degree(), table.degree());
        for (int i = 0; i <= dmax; ++i) {
            if (built.coeff(i) != table.coeff(i))
                diff.mismatches.push_back("Q_" + std::to_string(k) + " coeff " + std::to_string(i) +
                                          ": built " + rat_to_string(built.coeff(i)) +
                                          " vs table " + rat_to_string(table.coeff(i)));
        }
    }
    return diff;
}

// Grid scan of a one-parameter family template; reports each verdict plus
// the last certified and first failed parameter values.
struct ScanResult {
    std::vector<std::pair<Rat, Verdict>> points;
    std::optional<Rat> last_certified;
    std::optional<Rat> first_failed;
};

inline ScanResult scan_parameter(const std::function<WeightFamily(const Rat&)>& make,
                                 const Rat& b_lo, const Rat& b_hi, long steps, long N) {
    if (steps < 1) throw std::invalid_argument("scan_parameter: need steps >= 1");
    ScanResult out;
    for (long i = 0; i <= steps; ++i) {
        Rat b = b_lo + (b_hi - b_lo) * Rat(i) / Rat(steps);
        Verdict v = certify(make(b), N).verdict;
        out.points.emplace_back(b, v);
        if (v == Verdict::Certified) out.last_certified = b;
        if (v == Verdict::Failed && !out.first_failed) out.first_failed = b;
    }
    return out;
}

}  // namespace milincert
