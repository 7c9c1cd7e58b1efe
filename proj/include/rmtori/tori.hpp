#pragma once

#include "rmtori/class_group.hpp"
#include "rmtori/field.hpp"
#include "rmtori/ideal.hpp"
#include "rmtori/lattice.hpp"
#include "rmtori/numeric.hpp"

#include <array>
#include <cstddef>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rmtori {

/// Isomorphism class of a quantum torus R/L with End = O_F, held by its
/// canonical representative lattice (the reduced ideal of smallest norm in
/// the ideal class of L). Two classes are equal iff their lattices are
/// homothetic; canonical representatives make that structural.
class QuantumTorusClass {
public:
    static QuantumTorusClass of(const Pseudolattice& L) {
        EndOrderInfo e = end_order(L);
        if (!e.order.is_maximal())
            throw std::invalid_argument("lattice has non-maximal multiplier ring");
        // L lies in F with O_F multipliers, so it is itself a fractional
        // ideal; canonicalize within its class.
        FractionalIdeal rep = canonical_class_rep(FractionalIdeal(L.hnf()));
        return QuantumTorusClass(Pseudolattice(rep.module()), e.order);
    }

    static QuantumTorusClass of_ideal(const FractionalIdeal& A) {
        return QuantumTorusClass(Pseudolattice(canonical_class_rep(A).module()),
                                 Order{A.context(), 1});
    }

    const Pseudolattice& rep() const { return rep_; }
    const Order& end() const { return end_; }
    const FieldContext& context() const { return rep_.context(); }

    FractionalIdeal rep_ideal() const { return FractionalIdeal(rep_.hnf()); }

    bool operator==(const QuantumTorusClass& o) const { return rep_ == o.rep_; }
    bool operator!=(const QuantumTorusClass& o) const { return rep_ != o.rep_; }

    std::string str() const { return "Z_" + rep_.str(); }

private:
    QuantumTorusClass(Pseudolattice rep, Order end) : rep_(std::move(rep)), end_(std::move(end)) {}

    Pseudolattice rep_;
    Order end_;
};

/// Real-multiplication data of a lattice: the field, the multiplier order,
/// and the witness polynomial c*X^2 + (d-a)*X - b satisfied by w1/w2,
/// extracted from the matrix of the order generator f*omega.
struct RmInfo {
    FieldContext field;
    Order order;
    MultiplierWitness witness;
    std::array<Int, 3> theta_poly;  // {c, d - a, -b}
};

inline RmInfo rm_detect(const Pseudolattice& L) {
    EndOrderInfo e = end_order(L);
    const MultiplierWitness& w = e.witnesses.back();  // the f*omega generator
    return {L.context(), e.order, w, {w.c, w.d - w.a, -w.b}};
}

/// One torus class per ideal class; the list has length h_F and starts with
/// the class of O_F.
inline std::vector<QuantumTorusClass> enumerate_qt(const FieldContext& ctx) {
    std::vector<QuantumTorusClass> out;
    for (const IdealClass& c : class_group(ctx).reps) out.push_back(QuantumTorusClass::of_ideal(c.rep()));
    return out;
}

/// The ideal-class action [a] * Z_L = Z_{aL}. Narrow classes act through the
/// canonical surjection onto C(F).
inline QuantumTorusClass act(const IdealClass& c, const QuantumTorusClass& Z) {
    if (c.context().d() != Z.context().d())
        throw std::invalid_argument("class and torus live in different fields");
    return QuantumTorusClass::of_ideal(c.rep() * Z.rep_ideal());
}

/// The unique class carrying Z1 to Z2: the class of the colon module
/// (L2 : L1).
inline IdealClass transporter(const QuantumTorusClass& Z1, const QuantumTorusClass& Z2) {
    if (Z1.context().d() != Z2.context().d())
        throw std::invalid_argument("tori live in different fields");
    FractionalIdeal T(hom_module(Z1.rep(), Z2.rep()));
    return IdealClass::of(T, false);
}

/// Outcome of the exhaustive simple-transitivity verification.
struct ActionReport {
    bool pass = true;
    std::vector<std::pair<std::string, bool>> checks;
    std::string counterexample;

    void record(const std::string& name, bool ok, const std::string& detail = "") {
        checks.emplace_back(name, ok);
        if (!ok) {
            pass = false;
            if (counterexample.empty()) counterexample = name + (detail.empty() ? "" : ": " + detail);
        }
    }
};

/// Exhaustively checks the action axioms, End-preservation, simple
/// transitivity (a Latin square of classes), representative independence
/// under random principal rescalings, and the class-number count.
inline ActionReport verify_simply_transitive(const FieldContext& ctx,
                                             int rescaling_trials = 100,
                                             std::uint64_t seed = 1) {
    ActionReport report;
    ClassGroup cg = class_group(ctx);
    std::vector<QuantumTorusClass> tori = enumerate_qt(ctx);

    report.record("corollary_count", Int(tori.size()) == cg.h);

    bool identity_ok = true;
    for (const auto& Z : tori)
        if (act(cg.identity(), Z) != Z) identity_ok = false;
    report.record("identity_action", identity_ok);

    bool compat_ok = true;
    std::string compat_detail;
    for (const auto& c1 : cg.reps)
        for (const auto& c2 : cg.reps)
            for (const auto& Z : tori)
                if (act(c1 * c2, Z) != act(c1, act(c2, Z))) {
                    compat_ok = false;
                    compat_detail = c1.str() + ", " + c2.str() + " on " + Z.str();
                }
    report.record("compatibility", compat_ok, compat_detail);

    bool end_ok = true;
    for (const auto& c : cg.reps)
        for (const auto& Z : tori)
            if (!end_order(act(c, Z).rep()).order.is_maximal()) end_ok = false;
    report.record("end_preservation", end_ok);

    // Latin square: every ordered pair is connected by exactly one class.
    bool unique_ok = true;
    std::string unique_detail;
    for (const auto& Z1 : tori)
        for (const auto& Z2 : tori) {
            int hits = 0;
            for (const auto& c : cg.reps)
                if (act(c, Z1) == Z2) ++hits;
            if (hits != 1) {
                unique_ok = false;
                unique_detail = Z1.str() + " -> " + Z2.str() + " reached by " +
                                std::to_string(hits) + " classes";
            }
            IdealClass t = transporter(Z1, Z2);
            if (act(t, Z1) != Z2) {
                unique_ok = false;
                unique_detail = "transporter failure at " + Z1.str() + " -> " + Z2.str();
            }
        }
    report.record("simple_transitivity", unique_ok, unique_detail);

    // Representative independence: [alpha * a] acts as [a].
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    bool rep_ok = true;
    for (int t = 0; t < rescaling_trials; ++t) {
        const IdealClass& c = cg.reps[rng() % cg.reps.size()];
        const QuantumTorusClass& Z = tori[rng() % tori.size()];
        QuadElem alpha(ctx, Rat(num(rng), den(rng)), Rat(num(rng), den(rng)));
        if (alpha.is_zero()) continue;
        FractionalIdeal rescaled = c.rep().scaled(alpha);
        if (QuantumTorusClass::of_ideal(rescaled * Z.rep_ideal()) != act(c, Z)) rep_ok = false;
    }
    report.record("representative_independence", rep_ok);

    return report;
}

/// A formal element of Gal(H_F/F): an ideal class relabeled through the
/// reciprocity isomorphism. No class field is ever constructed.
struct GaloisLabel {
    IdealClass cls;
    std::string label;

    bool operator==(const GaloisLabel& o) const { return cls == o.cls; }
};

inline std::string galois_label_string(const IdealClass& c) {
    if (c.is_identity()) return "id";
    const FractionalIdeal& rep = c.rep();
    return "σ_[(" + rep.module().a().str() + ", " + rep.module().basis_second().str() + ")]";
}

/// The Galois action table: labels, their action on the torus classes, and
/// their composition (= class multiplication under the relabeling).
struct GaloisTable {
    std::vector<GaloisLabel> labels;
    std::vector<QuantumTorusClass> tori;
    /// action[i][j] = index of labels[i] applied to tori[j]
    std::vector<std::vector<std::size_t>> action;
    /// composition[i][j] = index of labels[i] * labels[j]
    std::vector<std::vector<std::size_t>> composition;
};

inline GaloisTable galois_table(const FieldContext& ctx) {
    GaloisTable out;
    ClassGroup cg = class_group(ctx);
    out.tori = enumerate_qt(ctx);
    for (const auto& c : cg.reps) out.labels.push_back({c, galois_label_string(c)});

    auto torus_index = [&](const QuantumTorusClass& Z) -> std::size_t {
        for (std::size_t i = 0; i < out.tori.size(); ++i)
            if (out.tori[i] == Z) return i;
        throw std::runtime_error("action left the torus set (internal error)");
    };
    auto label_index = [&](const IdealClass& c) -> std::size_t {
        for (std::size_t i = 0; i < out.labels.size(); ++i)
            if (out.labels[i].cls == c) return i;
        throw std::runtime_error("composition left the class set (internal error)");
    };

    out.action.resize(out.labels.size());
    out.composition.resize(out.labels.size());
    for (std::size_t i = 0; i < out.labels.size(); ++i) {
        for (std::size_t j = 0; j < out.tori.size(); ++j)
            out.action[i].push_back(torus_index(act(out.labels[i].cls, out.tori[j])));
        for (std::size_t j = 0; j < out.labels.size(); ++j)
            out.composition[i].push_back(label_index(out.labels[i].cls * out.labels[j].cls));
    }
    return out;
}

}  // namespace rmtori
