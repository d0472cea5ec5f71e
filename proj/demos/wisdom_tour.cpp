// Walks the five counterexample families and prints the headline
// diagnostics for each: the one-time value, the stationary maximum, and a
// short verdict table over a geometric grid.

#include <cstdio>

#include "crowdwise/graph_families.hpp"
#include "crowdwise/wisdom.hpp"

using namespace crowdwise;

namespace {

void tour(const std::string& name, const FamilyGenerator& gen, const std::vector<int>& grid,
          const std::vector<Notion>& notions, const DiagnosticsConfig& cfg) {
    const WisdomReport rep = run_diagnostics(gen, grid, notions, cfg);
    std::printf("%-14s (%s)\n", name.c_str(), to_string(rep.kind).c_str());
    for (const NotionReport& nr : rep.notions) {
        const double last = nr.trace.points.empty() ? 0.0 : nr.trace.points.back().value;
        std::printf("  %-16s slope % 7.3f   last %.4f   -> %s\n", nr.trace.notion.c_str(),
                    nr.trace.fit.slope, last, to_string(nr.verdict).c_str());
    }
}

} // namespace

int main() {
    DiagnosticsConfig cfg;
    const Notion one{Notion::Kind::OneTime};
    const Notion wise{Notion::Kind::Wise};
    Notion two;
    two.kind = Notion::Kind::FiniteTime;
    two.k = 2;

    tour("star", make_family("star"), {10, 20, 40, 80, 160}, {one, wise}, cfg);
    tour("star-complete", make_family("star-complete"), {6, 12, 24, 48, 96}, {one, wise}, cfg);
    tour("biased-path", make_family("biased-path", {{"nu", 2.0}}), {10, 20, 40, 80, 160},
         {one, two, wise}, cfg);
    tour("reversed-tree", make_family("reversed-tree"), {6, 7, 8, 9, 10}, {one, wise}, cfg);
    tour("double-star", make_family("double-star"), {4, 8, 16, 32}, {one, two}, cfg);
    return 0;
}
