#include "ltlfix/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "ltlfix/counting.hpp"
#include "ltlfix/errors.hpp"

namespace ltlfix::harness {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> splitWords(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

std::string defaultName(const std::string& sourceName) {
    if (sourceName.empty() || sourceName == "<string>") return "spec";
    size_t slash = sourceName.find_last_of("/\\");
    std::string base = slash == std::string::npos ? sourceName : sourceName.substr(slash + 1);
    size_t dot = base.find_last_of('.');
    if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
    return base.empty() ? "spec" : base;
}

} // namespace

Spec parseSpecText(const std::string& text, const std::string& sourceName) {
    struct Line {
        int number;
        std::string key;
        std::string value;
    };
    std::vector<Line> lines;
    {
        std::istringstream in(text);
        std::string raw;
        int number = 0;
        while (std::getline(in, raw)) {
            ++number;
            size_t hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            std::string line = trim(raw);
            if (line.empty()) continue;
            size_t colon = line.find(':');
            if (colon == std::string::npos)
                throw SpecFormatError("expected 'KEY: value'", number);
            lines.push_back({number, trim(line.substr(0, colon)), trim(line.substr(colon + 1))});
        }
    }

    Spec s;
    s.name = defaultName(sourceName);
    bool sawName = false, sawInputs = false, sawOutputs = false;
    std::vector<Line> formulaLines;
    for (const Line& l : lines) {
        if (l.key == "NAME") {
            if (sawName) throw SpecFormatError("duplicate NAME", l.number);
            if (l.value.empty()) throw SpecFormatError("empty NAME", l.number);
            s.name = l.value;
            sawName = true;
        } else if (l.key == "INPUTS") {
            if (sawInputs) throw SpecFormatError("duplicate INPUTS", l.number);
            s.inputs = splitWords(l.value);
            sawInputs = true;
        } else if (l.key == "OUTPUTS") {
            if (sawOutputs) throw SpecFormatError("duplicate OUTPUTS", l.number);
            s.outputs = splitWords(l.value);
            sawOutputs = true;
        } else if (l.key == "ASSUMPTION" || l.key == "GUARANTEE") {
            if (l.value.empty()) throw SpecFormatError("empty " + l.key, l.number);
            formulaLines.push_back(l);
        } else {
            throw SpecFormatError("unknown key '" + l.key + "'", l.number);
        }
    }
    if (!sawInputs) throw SpecFormatError("missing INPUTS line");
    if (!sawOutputs) throw SpecFormatError("missing OUTPUTS line");

    std::vector<std::string> allVars = s.variables();
    for (const std::string& in : s.inputs)
        if (std::find(s.outputs.begin(), s.outputs.end(), in) != s.outputs.end())
            throw SpecFormatError("variable '" + in + "' declared as both input and output");

    for (const Line& l : formulaLines) {
        FormulaPtr f;
        try {
            f = parse(l.value, allVars);
        } catch (const ParseError& e) {
            throw SpecFormatError(std::string(e.what()) + " in '" + l.value + "'", l.number);
        }
        (l.key == "ASSUMPTION" ? s.assumptions : s.guarantees).push_back(f);
    }
    s.validate();
    return s;
}

SpecFile loadSpecFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecFormatError("cannot open spec file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return {path, parseSpecText(buf.str(), path)};
    } catch (const SpecFormatError& e) {
        throw SpecFormatError(path + ": " + e.what(), e.line());
    }
}

std::string specToText(const Spec& s) {
    std::ostringstream out;
    out << "NAME: " << (s.name.empty() ? "spec" : s.name) << "\n";
    out << "INPUTS:";
    for (const auto& v : s.inputs) out << ' ' << v;
    out << "\nOUTPUTS:";
    for (const auto& v : s.outputs) out << ' ' << v;
    out << '\n';
    for (const auto& a : s.assumptions) out << "ASSUMPTION: " << print(a) << '\n';
    for (const auto& g : s.guarantees) out << "GUARANTEE: " << print(g) << '\n';
    return out.str();
}

void saveSpecFile(const Spec& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SpecFormatError("cannot write spec file '" + path + "'");
    out << specToText(s);
    if (!out.flush()) throw SpecFormatError("write failed for '" + path + "'");
}

OverlapSummary compareRepairSets(const std::vector<Spec>& ours,
                                 const std::vector<Spec>& reference) {
    OverlapSummary summary;
    std::vector<FormulaPtr> refFormulas;
    refFormulas.reserve(reference.size());
    for (const Spec& r : reference) refFormulas.push_back(r.implicationFormula());

    for (size_t i = 0; i < ours.size(); ++i) {
        FormulaPtr f = ours[i].implicationFormula();
        bool anyEquivalent = false, anyStronger = false, anyWeaker = false;
        for (size_t j = 0; j < refFormulas.size(); ++j) {
            analysis::Relation rel = analysis::classifyRelation(f, refFormulas[j]);
            summary.records.push_back({i, j, rel});
            anyEquivalent |= rel == analysis::Relation::Equivalent;
            anyStronger |= rel == analysis::Relation::AStrongerThanB;
            anyWeaker |= rel == analysis::Relation::AWeakerThanB;
        }
        if (anyEquivalent)
            ++summary.equivalent;
        else {
            ++summary.unique;
            if (anyStronger)
                ++summary.stronger;
            else if (anyWeaker)
                ++summary.weaker;
        }
    }
    return summary;
}

double varghaDelaneyA12(const std::vector<double>& samplesA,
                        const std::vector<double>& samplesB) {
    if (samplesA.empty() || samplesB.empty())
        throw std::invalid_argument("varghaDelaneyA12: empty sample");
    double numer = 0.0;
    for (double a : samplesA)
        for (double b : samplesB) {
            if (a > b)
                numer += 1.0;
            else if (a == b)
                numer += 0.5;
        }
    return numer / (static_cast<double>(samplesA.size()) * static_cast<double>(samplesB.size()));
}

RankingStudyReport runRankingStudy(int setCount, int formulasPerSet,
                                   const Alphabet& alphabet, uint64_t kMin,
                                   uint64_t kMax, uint64_t rngSeed) {
    if (setCount < 1 || formulasPerSet < 1 || kMin < 1 || kMax < kMin)
        throw std::invalid_argument("runRankingStudy: bad parameters");

    RankingStudyReport report;
    for (int setIdx = 0; setIdx < setCount; ++setIdx) {
        std::mt19937_64 rng(rngSeed + 0x9E3779B97F4A7C15ull * (setIdx + 1));
        RankingSetResult result;
        result.k = kMin + rng() % (kMax - kMin + 1);

        std::vector<FormulaPtr> formulas;
        formulas.reserve(formulasPerSet);
        for (int i = 0; i < formulasPerSet; ++i)
            formulas.push_back(randomFormula(rng, alphabet.names(), 4));

        // Keep only formulas whose exact count is feasible.
        std::vector<FormulaPtr> kept;
        std::vector<counting::BigInt> exact;
        for (const FormulaPtr& f : formulas) {
            try {
                counting::BigInt c = counting::countLassosExact(f, result.k, alphabet);
                kept.push_back(f);
                exact.push_back(std::move(c));
            } catch (const ResourceError&) {
                ++result.skipped;
            }
        }
        result.formulaCount = static_cast<int>(kept.size());

        std::vector<counting::BigInt> approx;
        approx.reserve(kept.size());
        for (const FormulaPtr& f : kept)
            approx.push_back(counting::countModelsApprox(f, result.k, alphabet));

        // Mean fractional rank for the tie-corrected Spearman rho.
        auto meanRanks = [](const std::vector<counting::BigInt>& counts) {
            std::vector<double> rank(counts.size());
            for (size_t i = 0; i < counts.size(); ++i) {
                int below = 0, equal = 0;
                for (size_t j = 0; j < counts.size(); ++j) {
                    if (counts[j] < counts[i]) ++below;
                    else if (counts[j] == counts[i]) ++equal;
                }
                rank[i] = below + (equal - 1) * 0.5;
            }
            return rank;
        };
        // Discrepancy = misranked formulas: a strict pairwise inversion
        // (approx orders i below j, exact orders i above j) marks one of the
        // two as misplaced; the minimum vertex cover of the inversion graph
        // is the fewest formulas one must discard for the rankings to agree.
        size_t n = kept.size();
        std::vector<std::pair<int, int>> inversions;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) {
                bool inv = (approx[i] < approx[j] && exact[i] > exact[j]) ||
                           (approx[j] < approx[i] && exact[j] > exact[i]);
                if (inv) inversions.emplace_back(static_cast<int>(i),
                                                 static_cast<int>(j));
            }
        std::vector<char> dropped(n, 0);
        std::function<int(size_t)> coverFrom = [&](size_t e) -> int {
            while (e < inversions.size() && (dropped[inversions[e].first] ||
                                             dropped[inversions[e].second]))
                ++e;
            if (e == inversions.size()) return 0;
            auto [u, v] = inversions[e];
            dropped[u] = 1;
            int withU = 1 + coverFrom(e + 1);
            dropped[u] = 0;
            dropped[v] = 1;
            int withV = 1 + coverFrom(e + 1);
            dropped[v] = 0;
            return std::min(withU, withV);
        };
        result.discrepancy = coverFrom(0);

        std::vector<double> ra = meanRanks(approx), re = meanRanks(exact);
        double ma = 0, me = 0;
        for (size_t i = 0; i < n; ++i) { ma += ra[i]; me += re[i]; }
        if (n > 0) { ma /= n; me /= n; }
        double cov = 0, va = 0, ve = 0;
        for (size_t i = 0; i < n; ++i) {
            cov += (ra[i] - ma) * (re[i] - me);
            va += (ra[i] - ma) * (ra[i] - ma);
            ve += (re[i] - me) * (re[i] - me);
        }
        result.rankCorrelation =
            n >= 2 && va > 0 && ve > 0 ? cov / std::sqrt(va * ve) : 1.0;
        report.sets.push_back(result);
    }
    return report;
}

} // namespace ltlfix::harness
