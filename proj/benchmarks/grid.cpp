#include "grid.hpp"

#include <string>

namespace bench {

namespace {

std::string dart(int i, int j, int k) {
    return "d" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k);
}

}  // namespace

gmr::GMap grid(int n) {
    using namespace gmr;
    GMap g;
    g.spec.dimension = 2;
    g.spec.embeddings = {{"point", OrbitType{{1, 2}}, "point"}, {"color", OrbitType{{0, 1}}, "color"}};
    g.graph = IGraph(g.spec.index_set());
    const int corner[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Value shade(Color{double((i * 37 + j * 11) % 256), 128, 200});
            for (int k = 0; k < 8; ++k) {
                // dart 2s starts side s, dart 2s+1 ends it
                const int* c = corner[((k + 1) / 2) % 4];
                const std::string d = dart(i, j, k);
                g.graph.add_node(d);
                g.graph.set_label("point", d, Value(Point2{double(i + c[0]), double(j + c[1])}));
                g.graph.set_label("color", d, shade);
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int s = 0; s < 4; ++s) {
                add_edge(g.graph, dart(i, j, 2 * s), dart(i, j, 2 * s + 1), 0);
                add_edge(g.graph, dart(i, j, 2 * s + 1), dart(i, j, (2 * s + 2) % 8), 1);
            }
            // right and top neighbours; borders stay free
            if (i + 1 < n) {
                add_edge(g.graph, dart(i, j, 2), dart(i + 1, j, 7), 2);
                add_edge(g.graph, dart(i, j, 3), dart(i + 1, j, 6), 2);
            } else {
                add_edge(g.graph, dart(i, j, 2), dart(i, j, 2), 2);
                add_edge(g.graph, dart(i, j, 3), dart(i, j, 3), 2);
            }
            if (j + 1 < n) {
                add_edge(g.graph, dart(i, j, 4), dart(i, j + 1, 1), 2);
                add_edge(g.graph, dart(i, j, 5), dart(i, j + 1, 0), 2);
            } else {
                add_edge(g.graph, dart(i, j, 4), dart(i, j, 4), 2);
                add_edge(g.graph, dart(i, j, 5), dart(i, j, 5), 2);
            }
            if (i == 0) {
                add_edge(g.graph, dart(i, j, 6), dart(i, j, 6), 2);
                add_edge(g.graph, dart(i, j, 7), dart(i, j, 7), 2);
            }
            if (j == 0) {
                add_edge(g.graph, dart(i, j, 0), dart(i, j, 0), 2);
                add_edge(g.graph, dart(i, j, 1), dart(i, j, 1), 2);
            }
        }
    }
    return g;
}

}  // namespace bench
