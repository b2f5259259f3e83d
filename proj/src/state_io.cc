#include "cyclesim/state_io.h"

#include "cyclesim/errors.h"

namespace cyclesim {

Json state_to_json(const SparseState &s) {
    Json terms = Json::array();
    for (const Term &t : s.terms()) {
        Json term;
        term["path"] = bits_to_string(t.label.path, s.path_width());
        term["ancilla"] = bits_to_string(t.label.ancilla, s.ancilla_width());
        if (t.label.aux != AuxBit::kAbsent) {
            term["aux"] = t.label.aux == AuxBit::kOne ? 1 : 0;
        }
        term["c"] = t.c;
        terms.push_back(std::move(term));
    }
    Json j;
    j["n"] = s.vertices();
    j["level"] = s.level();
    j["ancilla_width"] = s.ancilla_width();
    j["terms"] = std::move(terms);
    j["norm_sq"] = Rational(s.norm_sq(), 1).num();
    return j;
}

SparseState state_from_json(const Json &j) {
    try {
        const int n = j.at("n").get<int>();
        const int level = j.at("level").get<int>();
        const int ancilla_width = j.at("ancilla_width").get<int>();
        const int path_width = edges_among(n);
        std::vector<Term> terms;
        bool has_aux = false;
        for (const Json &t : j.at("terms")) {
            BasisLabel label;
            label.path = bits_from_string(t.at("path").get<std::string>(), path_width);
            label.ancilla = bits_from_string(t.at("ancilla").get<std::string>(), ancilla_width);
            if (t.contains("aux")) {
                int aux = t.at("aux").get<int>();
                if (aux != 0 && aux != 1) {
                    throw ValidationError("aux must be 0 or 1");
                }
                label.aux = aux == 1 ? AuxBit::kOne : AuxBit::kZero;
                has_aux = true;
            }
            terms.push_back({label, t.at("c").get<Coefficient>()});
        }
        SparseState s(n, level, ancilla_width, has_aux, std::move(terms));
        if (j.contains("norm_sq") && j.at("norm_sq").get<std::int64_t>() != Rational(s.norm_sq(), 1).num()) {
            throw ValidationError("norm_sq does not match the terms");
        }
        return s;
    } catch (const Json::exception &e) {
        throw ValidationError(std::string("state JSON: ") + e.what());
    }
}

Json ledger_to_json(const ProbabilityLedger &ledger) {
    Json out = Json::array();
    for (const LevelRecord &e : ledger.entries()) {
        Json entry;
        entry["m"] = e.m;
        entry["p"] = e.p.str();
        entry["expected_repetitions"] = e.expected_repetitions().str();
        entry["terms_before"] = e.terms_before;
        entry["terms_after"] = e.terms_after;
        out.push_back(std::move(entry));
    }
    return out;
}

}  // namespace cyclesim
