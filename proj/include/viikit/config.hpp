#pragma once

#include <string>
#include <vector>

#include "viikit/errors.hpp"

namespace viikit {

// One rational curve on the cycle: its self-intersection and how many nodes it
// carries (a node is only possible when the curve closes the cycle by itself).
struct CycleCurve {
    long long self = -2;
    int nodes = 0;
};

// A linear chain of curves attached to one cycle curve. `chain` lists
// self-intersections from the top curve down to the one meeting the cycle.
struct Branch {
    int attach = 0;
    std::vector<long long> chain;
};

struct CurveConfiguration {
    std::vector<CycleCurve> cycle;
    std::vector<Branch> branches;

    int cycle_size() const { return (int)cycle.size(); }
    int total_curves() const {
        int n = cycle_size();
        for (const auto& b : branches) n += (int)b.chain.size();
        return n;
    }

    // All structural violations, empty when the configuration is valid.
    std::vector<std::string> violations() const {
        std::vector<std::string> out;
        const int p = cycle_size();
        if (p < 1) out.push_back("cycle must contain at least one curve");
        for (int i = 0; i < p; ++i) {
            if (cycle[i].self > -2)
                out.push_back("cycle curve " + std::to_string(i) + " has self-intersection " +
                              std::to_string(cycle[i].self) + " > -2");
            if (cycle[i].nodes != 0 && cycle[i].nodes != 1)
                out.push_back("cycle curve " + std::to_string(i) + " has node count " +
                              std::to_string(cycle[i].nodes));
        }
        if (p == 1 && !cycle.empty() && cycle[0].nodes != 1)
            out.push_back("a one-curve cycle must close through a node (node count 1)");
        if (p >= 2)
            for (int i = 0; i < p; ++i)
                if (cycle[i].nodes != 0)
                    out.push_back("cycle curve " + std::to_string(i) +
                                  " carries a node in a cycle of length >= 2");
        std::vector<bool> used(p > 0 ? (size_t)p : 0, false);
        for (size_t b = 0; b < branches.size(); ++b) {
            const auto& br = branches[b];
            if (br.attach < 0 || br.attach >= p) {
                out.push_back("branch " + std::to_string(b) + " attaches at index " +
                              std::to_string(br.attach) + " outside the cycle");
            } else if (used[(size_t)br.attach]) {
                out.push_back("cycle curve " + std::to_string(br.attach) +
                              " meets more than one branch");
            } else {
                used[(size_t)br.attach] = true;
            }
            if (br.chain.empty()) out.push_back("branch " + std::to_string(b) + " has an empty chain");
            for (size_t i = 0; i < br.chain.size(); ++i)
                if (br.chain[i] > -2)
                    out.push_back("branch " + std::to_string(b) + " curve " + std::to_string(i) +
                                  " has self-intersection " + std::to_string(br.chain[i]) + " > -2");
        }
        return out;
    }

    void validate() const {
        auto v = violations();
        if (v.empty()) return;
        std::string msg = "invalid configuration:";
        for (const auto& s : v) msg += "\n  - " + s;
        throw InvalidConfiguration(msg);
    }
};

}  // namespace viikit
