#include "ltlfix/spec.hpp"

#include <algorithm>
#include <unordered_set>

namespace ltlfix {

std::vector<std::string> Spec::variables() const {
    std::vector<std::string> vars = inputs;
    vars.insert(vars.end(), outputs.begin(), outputs.end());
    return vars;
}

FormulaPtr Spec::implicationFormula() const {
    if (assumptions.empty()) return guaranteeConjunction();
    return Formula::binary(Op::Implies, assumptionConjunction(), guaranteeConjunction());
}

FormulaPtr Spec::conjunctionFormula() const {
    std::vector<FormulaPtr> all = assumptions;
    all.insert(all.end(), guarantees.begin(), guarantees.end());
    return conjoin(all);
}

std::vector<FormulaPtr> Spec::allSubformulas() const {
    std::vector<FormulaPtr> order;
    FormulaSet seen;
    auto add = [&](const FormulaPtr& f) {
        for (const FormulaPtr& sub : subformulas(f)) {
            if (seen.insert(sub).second) order.push_back(sub);
        }
    };
    for (const FormulaPtr& a : assumptions) add(a);
    for (const FormulaPtr& g : guarantees) add(g);
    return order;
}

std::string Spec::canonicalKey() const {
    std::string key = "A:";
    for (const FormulaPtr& a : assumptions) {
        key += print(a);
        key += '|';
    }
    key += ";G:";
    for (const FormulaPtr& g : guarantees) {
        key += print(g);
        key += '|';
    }
    return key;
}

void Spec::validate() const {
    std::unordered_set<std::string> in(inputs.begin(), inputs.end());
    std::unordered_set<std::string> out(outputs.begin(), outputs.end());
    if (in.size() != inputs.size()) throw SpecFormatError("duplicate input variable");
    if (out.size() != outputs.size()) throw SpecFormatError("duplicate output variable");
    for (const auto& v : inputs) {
        if (out.count(v)) {
            throw SpecFormatError("variable '" + v + "' declared as both input and output");
        }
    }
    if (guarantees.empty()) throw SpecFormatError("specification has no guarantees");
    auto checkAtoms = [&](const FormulaPtr& f, const char* section) {
        for (const auto& atom : atomsOf(f)) {
            if (!in.count(atom) && !out.count(atom)) {
                throw SpecFormatError(std::string(section) + " uses undeclared atom '" + atom +
                                      "': " + print(f));
            }
        }
    };
    for (const FormulaPtr& a : assumptions) checkAtoms(a, "assumption");
    for (const FormulaPtr& g : guarantees) checkAtoms(g, "guarantee");
}

} // namespace ltlfix
