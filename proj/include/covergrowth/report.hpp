#pragma once

#include "covergrowth/covers.hpp"
#include "covergrowth/fox.hpp"
#include "covergrowth/growth.hpp"
#include "covergrowth/presentation.hpp"
#include "covergrowth/smith.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

// Presentation-layer structs for the command line.  Every report renders to
// text through a pure function of its fields, and the JSON encoding carries
// exactly those fields, so decoding a JSON report and re-rendering it
// reproduces the text output byte for byte.

namespace covergrowth {

struct ModuleSummary {
    long long rank = 0;
    std::vector<std::string> torsion;
};

struct ClassificationSummary {
    struct Witness {
        std::string factor;
        std::vector<int> orders;
    };

    std::string kind; // "linear" or "bounded"
    long long rate = 0;
    long long max_betti = 1;
    long long period = 1;
    std::vector<Witness> witnesses;
};

struct AnalyzeReport {
    std::string name;
    long long generators = 0;
    long long relators = 0;
    std::vector<std::string> warnings;
    long long betti1 = 0;
    std::vector<std::string> integer_torsion;
    ModuleSummary module;
    int t_minus_1_exponent = 0;
    ClassificationSummary classification;
    bool dichotomy_applies = false;
    std::optional<std::string> dichotomy_warning;
    std::optional<std::string> d1;
    std::optional<std::string> d2;
};

struct GrowthReport {
    struct Row {
        long long n = 1;
        long long betti_formula = 1;
        std::optional<long long> betti_oracle;
    };

    std::string name;
    long long generators = 0;
    long long relators = 0;
    std::vector<std::string> warnings;
    bool verified = false;
    std::vector<Row> rows;
};

struct ClassifyReport {
    std::string name;
    long long generators = 0;
    long long relators = 0;
    std::vector<std::string> warnings;
    ModuleSummary module;
    ClassificationSummary classification;
};

struct CoverReport {
    std::string name;
    std::vector<std::string> warnings;
    std::string quotient;
    long long order = 1;
    long long betti1 = 0;
    std::vector<std::string> integer_torsion;
    std::string presentation;
};

struct KnotReport {
    struct Witness {
        int order = 1;
        long long betti = 1;
    };

    std::string polynomial;
    bool grows = false;
    std::vector<Witness> witnesses;
};

// --- JSON encoding ---------------------------------------------------------

inline void to_json(nlohmann::json& j, const ModuleSummary& m) {
    j = {{"rank", m.rank}, {"torsion", m.torsion}};
}

inline void from_json(const nlohmann::json& j, ModuleSummary& m) {
    j.at("rank").get_to(m.rank);
    j.at("torsion").get_to(m.torsion);
}

inline void to_json(nlohmann::json& j, const ClassificationSummary::Witness& w) {
    j = {{"factor", w.factor}, {"orders", w.orders}};
}

inline void from_json(const nlohmann::json& j, ClassificationSummary::Witness& w) {
    j.at("factor").get_to(w.factor);
    j.at("orders").get_to(w.orders);
}

inline void to_json(nlohmann::json& j, const ClassificationSummary& c) {
    j = {{"kind", c.kind},
         {"rate", c.rate},
         {"max_betti", c.max_betti},
         {"period", c.period},
         {"witnesses", c.witnesses}};
}

inline void from_json(const nlohmann::json& j, ClassificationSummary& c) {
    j.at("kind").get_to(c.kind);
    j.at("rate").get_to(c.rate);
    j.at("max_betti").get_to(c.max_betti);
    j.at("period").get_to(c.period);
    j.at("witnesses").get_to(c.witnesses);
}

namespace detail {

inline nlohmann::json opt_to_json(const std::optional<std::string>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline std::optional<std::string> opt_string(const nlohmann::json& j, const char* key) {
    const nlohmann::json& v = j.at(key);
    if (v.is_null()) return std::nullopt;
    return v.get<std::string>();
}

inline void require_kind(const nlohmann::json& j, const char* kind) {
    if (j.at("report").get<std::string>() != kind)
        throw std::invalid_argument(std::string("expected a '") + kind + "' report");
}

} // namespace detail

inline void to_json(nlohmann::json& j, const AnalyzeReport& r) {
    j = {{"report", "analyze"},
         {"name", r.name},
         {"generators", r.generators},
         {"relators", r.relators},
         {"warnings", r.warnings},
         {"betti1", r.betti1},
         {"integer_torsion", r.integer_torsion},
         {"module", r.module},
         {"t_minus_1_exponent", r.t_minus_1_exponent},
         {"classification", r.classification},
         {"dichotomy_applies", r.dichotomy_applies},
         {"dichotomy_warning", detail::opt_to_json(r.dichotomy_warning)},
         {"d1", detail::opt_to_json(r.d1)},
         {"d2", detail::opt_to_json(r.d2)}};
}

inline void from_json(const nlohmann::json& j, AnalyzeReport& r) {
    detail::require_kind(j, "analyze");
    j.at("name").get_to(r.name);
    j.at("generators").get_to(r.generators);
    j.at("relators").get_to(r.relators);
    j.at("warnings").get_to(r.warnings);
    j.at("betti1").get_to(r.betti1);
    j.at("integer_torsion").get_to(r.integer_torsion);
    j.at("module").get_to(r.module);
    j.at("t_minus_1_exponent").get_to(r.t_minus_1_exponent);
    j.at("classification").get_to(r.classification);
    j.at("dichotomy_applies").get_to(r.dichotomy_applies);
    r.dichotomy_warning = detail::opt_string(j, "dichotomy_warning");
    r.d1 = detail::opt_string(j, "d1");
    r.d2 = detail::opt_string(j, "d2");
}

inline void to_json(nlohmann::json& j, const GrowthReport::Row& row) {
    j = {{"n", row.n},
         {"betti_formula", row.betti_formula},
         {"betti_oracle",
          row.betti_oracle ? nlohmann::json(*row.betti_oracle) : nlohmann::json(nullptr)}};
}

inline void from_json(const nlohmann::json& j, GrowthReport::Row& row) {
    j.at("n").get_to(row.n);
    j.at("betti_formula").get_to(row.betti_formula);
    const nlohmann::json& oracle = j.at("betti_oracle");
    if (oracle.is_null())
        row.betti_oracle.reset();
    else
        row.betti_oracle = oracle.get<long long>();
}

inline void to_json(nlohmann::json& j, const GrowthReport& r) {
    j = {{"report", "growth"},
         {"name", r.name},
         {"generators", r.generators},
         {"relators", r.relators},
         {"warnings", r.warnings},
         {"verified", r.verified},
         {"rows", r.rows}};
}

inline void from_json(const nlohmann::json& j, GrowthReport& r) {
    detail::require_kind(j, "growth");
    j.at("name").get_to(r.name);
    j.at("generators").get_to(r.generators);
    j.at("relators").get_to(r.relators);
    j.at("warnings").get_to(r.warnings);
    j.at("verified").get_to(r.verified);
    j.at("rows").get_to(r.rows);
}

inline void to_json(nlohmann::json& j, const ClassifyReport& r) {
    j = {{"report", "classify"},
         {"name", r.name},
         {"generators", r.generators},
         {"relators", r.relators},
         {"warnings", r.warnings},
         {"module", r.module},
         {"classification", r.classification}};
}

inline void from_json(const nlohmann::json& j, ClassifyReport& r) {
    detail::require_kind(j, "classify");
    j.at("name").get_to(r.name);
    j.at("generators").get_to(r.generators);
    j.at("relators").get_to(r.relators);
    j.at("warnings").get_to(r.warnings);
    j.at("module").get_to(r.module);
    j.at("classification").get_to(r.classification);
}

inline void to_json(nlohmann::json& j, const CoverReport& r) {
    j = {{"report", "cover"},
         {"name", r.name},
         {"warnings", r.warnings},
         {"quotient", r.quotient},
         {"order", r.order},
         {"betti1", r.betti1},
         {"integer_torsion", r.integer_torsion},
         {"presentation", r.presentation}};
}

inline void from_json(const nlohmann::json& j, CoverReport& r) {
    detail::require_kind(j, "cover");
    j.at("name").get_to(r.name);
    j.at("warnings").get_to(r.warnings);
    j.at("quotient").get_to(r.quotient);
    j.at("order").get_to(r.order);
    j.at("betti1").get_to(r.betti1);
    j.at("integer_torsion").get_to(r.integer_torsion);
    j.at("presentation").get_to(r.presentation);
}

inline void to_json(nlohmann::json& j, const KnotReport::Witness& w) {
    j = {{"order", w.order}, {"betti", w.betti}};
}

inline void from_json(const nlohmann::json& j, KnotReport::Witness& w) {
    j.at("order").get_to(w.order);
    j.at("betti").get_to(w.betti);
}

inline void to_json(nlohmann::json& j, const KnotReport& r) {
    j = {{"report", "knot"},
         {"polynomial", r.polynomial},
         {"grows", r.grows},
         {"witnesses", r.witnesses}};
}

inline void from_json(const nlohmann::json& j, KnotReport& r) {
    detail::require_kind(j, "knot");
    j.at("polynomial").get_to(r.polynomial);
    j.at("grows").get_to(r.grows);
    j.at("witnesses").get_to(r.witnesses);
}

// --- text rendering --------------------------------------------------------

namespace detail {

inline std::string pad_left(const std::string& s, size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

inline std::string integer_torsion_clause(const std::vector<std::string>& torsion) {
    if (torsion.empty()) return "none";
    std::string out;
    for (size_t i = 0; i < torsion.size(); ++i) {
        if (i) out += " x ";
        out += "Z/" + torsion[i];
    }
    return out;
}

inline std::string module_line(const ModuleSummary& m) {
    std::string out = "infinite cyclic cover: rank " + std::to_string(m.rank) + ", torsion";
    if (m.torsion.empty()) return out + " none";
    for (const std::string& p : m.torsion) out += " [" + p + "]";
    return out;
}

inline std::string classification_lines(const ClassificationSummary& c) {
    std::string out;
    if (c.kind == "linear") {
        out += "growth: linear with rate " + std::to_string(c.rate) + "\n";
    } else {
        out += "growth: bounded, max b1 = " + std::to_string(c.max_betti) + ", period " +
               std::to_string(c.period) + "\n";
    }
    out += "cyclotomic witnesses:";
    if (c.witnesses.empty()) {
        out += " none\n";
        return out;
    }
    for (size_t i = 0; i < c.witnesses.size(); ++i) {
        out += i ? "; " : " ";
        out += c.witnesses[i].factor + " (orders";
        for (size_t k = 0; k < c.witnesses[i].orders.size(); ++k)
            out += (k ? ", " : " ") + std::to_string(c.witnesses[i].orders[k]);
        out += ")";
    }
    out += "\n";
    return out;
}

inline std::string header_line(const std::string& name, long long generators,
                               long long relators) {
    return "presentation: " + name + " (" + std::to_string(generators) + " generators, " +
           std::to_string(relators) + " relators)\n";
}

inline std::string warning_lines(const std::vector<std::string>& warnings) {
    std::string out;
    for (const std::string& w : warnings) out += "warning: " + w + "\n";
    return out;
}

} // namespace detail

inline std::string render_text(const AnalyzeReport& r) {
    std::string out = detail::header_line(r.name, r.generators, r.relators);
    out += detail::warning_lines(r.warnings);
    out += "abelianization: b1 = " + std::to_string(r.betti1) + ", torsion " +
           detail::integer_torsion_clause(r.integer_torsion) + "\n";
    out += detail::module_line(r.module) + "\n";
    out += "(t-1)-torsion exponent: N = " + std::to_string(r.t_minus_1_exponent) + "\n";
    out += detail::classification_lines(r.classification);
    if (!r.dichotomy_applies) {
        out += "dichotomy check: not applicable\n";
    } else if (!r.dichotomy_warning) {
        out += "dichotomy check: holds, positive rank iff no (t-1)-torsion\n";
    } else {
        out += "dichotomy check: VIOLATED\n";
        out += "warning: " + *r.dichotomy_warning + "\n";
    }
    if (r.d1) out += "d1 =\n" + *r.d1 + "\n";
    if (r.d2) out += "d2 =\n" + *r.d2 + "\n";
    return out;
}

inline std::string render_text(const ClassifyReport& r) {
    std::string out = detail::header_line(r.name, r.generators, r.relators);
    out += detail::warning_lines(r.warnings);
    out += detail::module_line(r.module) + "\n";
    out += detail::classification_lines(r.classification);
    return out;
}

inline std::string render_text(const GrowthReport& r) {
    std::string out = detail::header_line(r.name, r.generators, r.relators);
    out += detail::warning_lines(r.warnings);

    size_t wn = 1, wf = 7, wo = 6; // headers: n, formula, oracle
    for (const GrowthReport::Row& row : r.rows) {
        wn = std::max(wn, std::to_string(row.n).size());
        wf = std::max(wf, std::to_string(row.betti_formula).size());
        if (row.betti_oracle) wo = std::max(wo, std::to_string(*row.betti_oracle).size());
    }
    out += detail::pad_left("n", wn) + "  " + detail::pad_left("formula", wf);
    if (r.verified) out += "  " + detail::pad_left("oracle", wo);
    out += "\n";
    for (const GrowthReport::Row& row : r.rows) {
        out += detail::pad_left(std::to_string(row.n), wn) + "  " +
               detail::pad_left(std::to_string(row.betti_formula), wf);
        if (r.verified)
            out += "  " + detail::pad_left(
                              row.betti_oracle ? std::to_string(*row.betti_oracle) : "-", wo);
        out += "\n";
    }
    return out;
}

inline std::string render_text(const CoverReport& r) {
    std::string out = "cover: " + r.name + "\n";
    out += detail::warning_lines(r.warnings);
    out += "quotient: " + r.quotient + ", order " + std::to_string(r.order) + "\n";
    out += "abelianization: b1 = " + std::to_string(r.betti1) + ", torsion " +
           detail::integer_torsion_clause(r.integer_torsion) + "\n";
    out += "presentation:\n" + r.presentation;
    return out;
}

inline std::string render_text(const KnotReport& r) {
    std::string out = "polynomial: " + r.polynomial + "\n";
    out += std::string("grows: ") + (r.grows ? "yes" : "no") + "\n";
    if (r.witnesses.empty()) return out;
    size_t wn = 1, wb = 2;
    for (const KnotReport::Witness& w : r.witnesses) {
        wn = std::max(wn, std::to_string(w.order).size());
        wb = std::max(wb, std::to_string(w.betti).size());
    }
    out += detail::pad_left("n", wn) + "  " + detail::pad_left("b1", wb) + "\n";
    for (const KnotReport::Witness& w : r.witnesses)
        out += detail::pad_left(std::to_string(w.order), wn) + "  " +
               detail::pad_left(std::to_string(w.betti), wb) + "\n";
    return out;
}

inline std::string render_csv(const GrowthReport& r) {
    std::string out = "n,betti_formula,betti_oracle\n";
    for (const GrowthReport::Row& row : r.rows) {
        out += std::to_string(row.n) + "," + std::to_string(row.betti_formula) + ",";
        if (row.betti_oracle) out += std::to_string(*row.betti_oracle);
        out += "\n";
    }
    return out;
}

inline std::string render_csv(const KnotReport& r) {
    std::string out = "n,betti\n";
    for (const KnotReport::Witness& w : r.witnesses)
        out += std::to_string(w.order) + "," + std::to_string(w.betti) + "\n";
    return out;
}

// --- report builders -------------------------------------------------------

namespace detail {

inline std::string display_name(const PresentationFile& file) {
    return file.name.empty() ? "(unnamed)" : file.name;
}

inline ModuleSummary summarize(const ModuleDecomposition& dec) {
    ModuleSummary m;
    m.rank = (long long)dec.rank;
    for (const CanonicalPoly& p : dec.torsion_factors) m.torsion.push_back(to_string(p));
    return m;
}

inline ClassificationSummary summarize(const GrowthClassification& c) {
    ClassificationSummary out;
    out.kind = c.kind == GrowthClassification::Kind::linear ? "linear" : "bounded";
    out.rate = c.rate;
    out.max_betti = c.max_value;
    out.period = c.period;
    for (const CyclotomicWitness& w : c.witnesses)
        out.witnesses.push_back({to_string(w.factor), w.orders});
    return out;
}

inline std::vector<std::string> torsion_strings(const IntegerAbelianization& ab) {
    std::vector<std::string> out;
    out.reserve(ab.torsion.size());
    for (const BigInt& d : ab.torsion) out.push_back(d.str());
    return out;
}

} // namespace detail

inline AnalyzeReport make_analyze_report(const PresentationFile& file, bool dump_matrices) {
    AnalyzeReport r;
    r.name = detail::display_name(file);
    r.generators = (long long)file.group.generators.size();
    r.relators = (long long)file.group.relators.size();
    r.warnings = file.warnings;

    IntegerAbelianization ab = presentation_abelianization(file.group);
    r.betti1 = (long long)ab.betti;
    r.integer_torsion = detail::torsion_strings(ab);

    AlexanderComplex cx = alexander_complex(file);
    ModuleDecomposition dec = homology_decomposition(cx.d2, cx.d1);
    r.module = detail::summarize(dec);

    TorsionDiagnostic diag = torsion_diagnostic(dec, file);
    r.t_minus_1_exponent = diag.max_valuation;
    r.classification = detail::summarize(classify_growth(dec));
    r.dichotomy_applies = diag.equivalence_applies;
    r.dichotomy_warning = diag.warning;

    if (dump_matrices) {
        r.d1 = to_string(cx.d1);
        r.d2 = to_string(cx.d2);
    }
    return r;
}

inline ClassifyReport make_classify_report(const PresentationFile& file) {
    ClassifyReport r;
    r.name = detail::display_name(file);
    r.generators = (long long)file.group.generators.size();
    r.relators = (long long)file.group.relators.size();
    r.warnings = file.warnings;
    ModuleDecomposition dec = infinite_cyclic_homology(file);
    r.module = detail::summarize(dec);
    r.classification = detail::summarize(classify_growth(dec));
    return r;
}

inline GrowthReport make_growth_report(const PresentationFile& file, long long max_n,
                                       bool verify) {
    GrowthReport r;
    r.name = detail::display_name(file);
    r.generators = (long long)file.group.generators.size();
    r.relators = (long long)file.group.relators.size();
    r.warnings = file.warnings;
    r.verified = verify;
    for (const GrowthRow& row : growth_table(file, max_n, verify))
        r.rows.push_back({row.n, row.betti, row.oracle});
    return r;
}

inline CoverReport make_cover_report(const PresentationFile& cover,
                                     const FiniteAbelianQuotient& quo) {
    CoverReport r;
    r.name = detail::display_name(cover);
    r.warnings = cover.warnings;
    for (size_t i = 0; i < quo.moduli.size(); ++i) {
        if (i) r.quotient += " x ";
        r.quotient += "Z/" + std::to_string(quo.moduli[i]);
    }
    r.order = quo.order();
    IntegerAbelianization ab = presentation_abelianization(cover.group);
    r.betti1 = (long long)ab.betti;
    r.integer_torsion = detail::torsion_strings(ab);
    r.presentation = print_presentation(cover);
    return r;
}

inline KnotReport make_knot_report(const CanonicalPoly& delta) {
    KnotReport r;
    r.polynomial = to_string(delta);
    KnotGrowth kg = knot_criterion(delta);
    r.grows = kg.grows;
    for (const auto& [order, betti] : kg.witnesses) r.witnesses.push_back({order, betti});
    return r;
}

} // namespace covergrowth
