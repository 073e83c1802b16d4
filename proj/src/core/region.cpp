#include "region.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace swsc {

bool Cell::bounded() const {
    return std::min(r1_max, sum_max) < kUnbounded &&
           std::min(r2_max, sum_max) < kUnbounded;
}

double Cell::top_at(double r1) const {
    if (r1 < 0.0 || r1 > std::min(r1_max, sum_max)) return -1.0;
    return std::min(r2_max, sum_max - r1);
}

Cell intersect(const Cell& a, const Cell& b) {
    Cell c;
    c.r1_max = std::min(a.r1_max, b.r1_max);
    c.r2_max = std::min(a.r2_max, b.r2_max);
    c.sum_max = std::min(a.sum_max, b.sum_max);
    if (a.label.empty())
        c.label = b.label;
    else if (b.label.empty() || a.label == b.label)
        c.label = a.label;
    else
        c.label = a.label + "&" + b.label;
    return c;
}

bool RateRegion2::contains(double r1, double r2, double slack) const {
    if (r1 < -slack || r2 < -slack) return false;
    for (const Cell& c : cells)
        if (c.contains(r1, r2, slack)) return true;
    return false;
}

double RateRegion2::max_r1() const {
    double m = 0.0;
    for (const Cell& c : cells) m = std::max(m, std::min(c.r1_max, c.sum_max));
    return m;
}

double RateRegion2::max_r2() const {
    double m = 0.0;
    for (const Cell& c : cells) m = std::max(m, std::min(c.r2_max, c.sum_max));
    return m;
}

double RateRegion2::top_at(double r1) const {
    double m = -1.0;
    for (const Cell& c : cells) m = std::max(m, c.top_at(r1));
    return m;
}

double RateRegion2::max_r1_at(double r2) const {
    double m = -1.0;
    for (const Cell& c : cells) {
        if (r2 > std::min(c.r2_max, c.sum_max)) continue;
        m = std::max(m, std::min(c.r1_max, c.sum_max - r2));
    }
    return m;
}

double RateRegion2::max_symmetric() const {
    double m = 0.0;
    for (const Cell& c : cells)
        m = std::max(m, std::min({c.r1_max, c.r2_max, c.sum_max / 2.0}));
    return m;
}

void RateRegion2::prune() {
    std::vector<Cell> kept;
    for (const Cell& c : cells) {
        bool dominated = false;
        for (const Cell& k : kept)
            if (k.r1_max >= c.r1_max && k.r2_max >= c.r2_max && k.sum_max >= c.sum_max) {
                dominated = true;
                break;
            }
        if (dominated) continue;
        kept.erase(std::remove_if(kept.begin(), kept.end(),
                                  [&](const Cell& k) {
                                      return c.r1_max >= k.r1_max &&
                                             c.r2_max >= k.r2_max &&
                                             c.sum_max >= k.sum_max;
                                  }),
                   kept.end());
        kept.push_back(c);
    }
    cells = std::move(kept);
}

std::vector<BoundaryPoint> RateRegion2::boundary(int resolution) const {
    std::vector<BoundaryPoint> out;
    if (cells.empty()) return out;
    double r1m = max_r1();

    std::set<double> xs;
    xs.insert(0.0);
    xs.insert(r1m);
    for (const Cell& c : cells) {
        double right = std::min(c.r1_max, c.sum_max);
        if (right >= 0.0 && right <= r1m) xs.insert(right);
        if (c.sum_max < kUnbounded && c.r2_max < kUnbounded) {
            double knee = c.sum_max - c.r2_max;
            if (knee > 0.0 && knee < r1m) xs.insert(knee);
        }
        // Crossings of this cell's diagonal with every flat top.
        if (c.sum_max < kUnbounded)
            for (const Cell& o : cells) {
                if (o.r2_max < kUnbounded) {
                    double x = c.sum_max - o.r2_max;
                    if (x > 0.0 && x < r1m) xs.insert(x);
                }
            }
    }
    for (int i = 1; i < resolution; ++i)
        xs.insert(r1m * i / resolution);

    std::vector<double> grid(xs.begin(), xs.end());
    auto active_cell = [&](double x) -> const Cell* {
        const Cell* best = nullptr;
        double top = -1.0;
        for (const Cell& c : cells) {
            double t = c.top_at(x);
            if (t > top) {
                top = t;
                best = &c;
            }
        }
        return best;
    };

    auto push = [&](double x, double y, const std::string& label) {
        if (!out.empty() && out.back().r1 == x && out.back().r2 == y) return;
        out.push_back({x, y, label});
    };

    for (size_t i = 0; i + 1 < grid.size(); ++i) {
        double x0 = grid[i], x1 = grid[i + 1];
        const Cell* c = active_cell(0.5 * (x0 + x1));
        if (!c) continue;
        push(x0, std::max(0.0, c->top_at(x0)), c->label);
        push(x1, std::max(0.0, c->top_at(x1)), c->label);
    }
    if (grid.size() == 1) {
        const Cell* c = active_cell(0.0);
        if (c) push(0.0, std::max(0.0, c->top_at(0.0)), c->label);
    }
    if (!out.empty() && out.back().r2 > 0.0) push(r1m, 0.0, out.back().label);
    return out;
}

RateRegion2 apply_edge_loss(const RateRegion2& region, int blocks, int k_layers,
                            int l_layers) {
    if (blocks <= std::max(k_layers, l_layers))
        throw ConfigError("edge-loss discount needs more blocks than layers");
    double c1 = static_cast<double>(blocks - k_layers + 1) / blocks;
    double c2 = static_cast<double>(blocks - l_layers + 1) / blocks;
    RateRegion2 out;
    for (const Cell& c : region.cells) {
        if (c.sum_max < kUnbounded)
            throw ConfigError("edge-loss discount applies to rectangle regions only");
        Cell d = c;
        if (d.r1_max < kUnbounded) d.r1_max *= c1;
        if (d.r2_max < kUnbounded) d.r2_max *= c2;
        out.cells.push_back(d);
    }
    return out;
}

RateRegion2 region_union(const RateRegion2& a, const RateRegion2& b) {
    RateRegion2 r = a;
    r.cells.insert(r.cells.end(), b.cells.begin(), b.cells.end());
    return r;
}

RateRegion2 region_intersection(const RateRegion2& a, const RateRegion2& b) {
    RateRegion2 r;
    for (const Cell& ca : a.cells)
        for (const Cell& cb : b.cells) r.cells.push_back(intersect(ca, cb));
    r.prune();
    return r;
}

bool region_contained_in(const RateRegion2& a, const RateRegion2& b, int grid,
                         double slack) {
    for (const auto& p : a.boundary(grid))
        if (!b.contains(p.r1, p.r2, slack)) return false;
    double r1m = a.max_r1(), r2m = a.max_r2();
    for (int i = 0; i <= grid; ++i)
        for (int j = 0; j <= grid; ++j) {
            double r1 = r1m * i / grid, r2 = r2m * j / grid;
            if (a.contains(r1, r2, 0.0) && !b.contains(r1, r2, slack)) return false;
        }
    return true;
}

std::string region_boundary_csv(const RateRegion2& region, int resolution) {
    std::ostringstream os;
    os << "R1_bits,R2_bits,source_label\n";
    for (const auto& p : region.boundary(resolution))
        os << format_double(p.r1) << "," << format_double(p.r2) << "," << p.label
           << "\n";
    return os.str();
}

std::string region_constraints_json(const RateRegion2& region) {
    nlohmann::json cells = nlohmann::json::array();
    for (const Cell& c : region.cells) {
        nlohmann::json constraints = nlohmann::json::array();
        if (c.r1_max < kUnbounded)
            constraints.push_back({{"coeffs", {1, 0}}, {"rhs", c.r1_max}});
        if (c.r2_max < kUnbounded)
            constraints.push_back({{"coeffs", {0, 1}}, {"rhs", c.r2_max}});
        if (c.sum_max < kUnbounded)
            constraints.push_back({{"coeffs", {1, 1}}, {"rhs", c.sum_max}});
        cells.push_back({{"label", c.label}, {"constraints", constraints}});
    }
    return nlohmann::json{{"cells", cells}}.dump(2);
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin elimination.

namespace {

struct Row {
    std::vector<double> a;
    double c = 0.0;
};

constexpr double kCoefEps = 1e-9;

bool same_coeffs(const Row& x, const Row& y) {
    for (size_t i = 0; i < x.a.size(); ++i)
        if (std::fabs(x.a[i] - y.a[i]) > kCoefEps) return false;
    return true;
}

void prune_rows(std::vector<Row>& rows) {
    std::vector<Row> kept;
    for (Row& r : rows) {
        bool zero = true;
        for (double v : r.a)
            if (std::fabs(v) > kCoefEps) {
                zero = false;
                break;
            }
        if (zero) {
            if (r.c < -1e-12) throw FmInfeasible("projection is empty");
            continue;
        }
        // Normalize integral coefficient rows by their gcd to keep the
        // combinations from growing.
        bool integral = true;
        long long g = 0;
        for (double v : r.a) {
            double rv = std::round(v);
            if (std::fabs(v - rv) > kCoefEps) {
                integral = false;
                break;
            }
            g = std::gcd(g, static_cast<long long>(std::llabs(static_cast<long long>(rv))));
        }
        if (integral && g > 1) {
            for (double& v : r.a) v = std::round(v) / g;
            r.c /= g;
        }
        bool dominated = false;
        for (const Row& k : kept)
            if (same_coeffs(k, r) && k.c <= r.c) {
                dominated = true;
                break;
            }
        if (dominated) continue;
        kept.erase(std::remove_if(kept.begin(), kept.end(),
                                  [&](const Row& k) {
                                      return same_coeffs(k, r) && r.c <= k.c;
                                  }),
                   kept.end());
        kept.push_back(std::move(r));
    }
    rows = std::move(kept);
}

void eliminate_var(std::vector<Row>& rows, int var) {
    std::vector<Row> pos, neg, out;
    for (Row& r : rows) {
        double v = r.a[var];
        if (v > kCoefEps)
            pos.push_back(std::move(r));
        else if (v < -kCoefEps)
            neg.push_back(std::move(r));
        else {
            r.a[var] = 0.0;
            out.push_back(std::move(r));
        }
    }
    for (const Row& p : pos)
        for (const Row& n : neg) {
            double kp = -n.a[var];
            double kn = p.a[var];
            Row r;
            r.a.resize(p.a.size());
            for (size_t i = 0; i < p.a.size(); ++i)
                r.a[i] = kp * p.a[i] + kn * n.a[i];
            r.a[var] = 0.0;
            r.c = kp * p.c + kn * n.c;
            out.push_back(std::move(r));
        }
    prune_rows(out);
    rows = std::move(out);
}

}  // namespace

Cell fm_project(int s_parts, int t_parts, const std::vector<PartConstraint>& cons) {
    const int n = s_parts + t_parts + 2;  // parts, then R1, then R2
    const int v_r1 = s_parts + t_parts;
    const int v_r2 = v_r1 + 1;
    std::vector<Row> rows;
    auto add = [&](std::vector<double> a, double c) {
        rows.push_back({std::move(a), c});
    };
    for (const auto& pc : cons) {
        std::vector<double> a(n, 0.0);
        for (int i = 0; i < s_parts; ++i)
            if (pc.mask1 >> i & 1) a[i] = 1.0;
        for (int j = 0; j < t_parts; ++j)
            if (pc.mask2 >> j & 1) a[s_parts + j] = 1.0;
        add(std::move(a), pc.rhs);
    }
    // R1 = sum of stream-1 parts, R2 = sum of stream-2 parts.
    {
        std::vector<double> a(n, 0.0), b(n, 0.0);
        for (int i = 0; i < s_parts; ++i) a[i] = -1.0, b[i] = 1.0;
        a[v_r1] = 1.0;
        b[v_r1] = -1.0;
        add(a, 0.0);
        add(b, 0.0);
    }
    {
        std::vector<double> a(n, 0.0), b(n, 0.0);
        for (int j = 0; j < t_parts; ++j) a[s_parts + j] = -1.0, b[s_parts + j] = 1.0;
        a[v_r2] = 1.0;
        b[v_r2] = -1.0;
        add(a, 0.0);
        add(b, 0.0);
    }
    for (int i = 0; i < s_parts + t_parts; ++i) {
        std::vector<double> a(n, 0.0);
        a[i] = -1.0;
        add(std::move(a), 0.0);
    }

    for (int v = 0; v < s_parts + t_parts; ++v) eliminate_var(rows, v);

    Cell cell;
    cell.r1_max = kUnbounded;
    cell.r2_max = kUnbounded;
    cell.sum_max = kUnbounded;
    std::vector<Row> leftovers;
    for (const Row& r : rows) {
        double a1 = r.a[v_r1], a2 = r.a[v_r2];
        bool z1 = std::fabs(a1) <= kCoefEps, z2 = std::fabs(a2) <= kCoefEps;
        if (z1 && z2) continue;  // pruned already
        if (a1 < -kCoefEps || a2 < -kCoefEps) {
            // Lower bounds on nonnegative rates carry no information unless
            // mixed-sign; keep mixed rows for the implication check below.
            if ((a1 > kCoefEps && a2 < -kCoefEps) || (a2 > kCoefEps && a1 < -kCoefEps))
                leftovers.push_back(r);
            continue;
        }
        if (z2 && std::fabs(a1 - 1.0) <= kCoefEps)
            cell.r1_max = std::min(cell.r1_max, r.c);
        else if (z1 && std::fabs(a2 - 1.0) <= kCoefEps)
            cell.r2_max = std::min(cell.r2_max, r.c);
        else if (std::fabs(a1 - a2) <= kCoefEps)
            cell.sum_max = std::min(cell.sum_max, r.c / a1);
        else
            leftovers.push_back(r);
    }
    if (std::min(cell.r1_max, cell.sum_max) < -1e-12 ||
        std::min(cell.r2_max, cell.sum_max) < -1e-12)
        throw FmInfeasible("projection is empty");
    // Any leftover row must already be implied by the staircase cell.
    if (!leftovers.empty()) {
        double r1m = std::min(cell.r1_max, cell.sum_max);
        double r2m = std::min(cell.r2_max, cell.sum_max);
        std::vector<std::pair<double, double>> verts = {
            {0.0, 0.0},
            {std::max(0.0, r1m), 0.0},
            {0.0, std::max(0.0, r2m)},
            {std::max(0.0, r1m), std::max(0.0, std::min(cell.r2_max, cell.sum_max - r1m))},
            {std::max(0.0, std::min(cell.r1_max, cell.sum_max - r2m)), std::max(0.0, r2m)}};
        for (const Row& r : leftovers)
            for (auto [x, y] : verts)
                if (r.a[v_r1] * x + r.a[v_r2] * y > r.c + 1e-9)
                    throw SwscError("projection left the staircase family");
    }
    if (cell.r1_max < 0.0) cell.r1_max = 0.0;
    if (cell.r2_max < 0.0) cell.r2_max = 0.0;
    if (cell.sum_max < 0.0) cell.sum_max = 0.0;
    return cell;
}

// ---------------------------------------------------------------------------

bool RateRegion4::contains(const std::array<double, 4>& r, double slack) const {
    for (double v : r)
        if (v < -slack) return false;
    for (const auto& c : constraints) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i)
            if (c.mask >> i & 1) s += r[i];
        if (s > c.rhs + slack) return false;
    }
    return true;
}

std::vector<std::array<double, 4>> region4_vertices(const RateRegion4& region) {
    // Facet list: the given constraints plus nonnegativity.
    struct Facet {
        std::array<double, 4> a;
        double c;
    };
    std::vector<Facet> facets;
    for (const auto& cst : region.constraints) {
        Facet f{{0, 0, 0, 0}, cst.rhs};
        for (int i = 0; i < 4; ++i)
            if (cst.mask >> i & 1) f.a[i] = 1.0;
        facets.push_back(f);
    }
    for (int i = 0; i < 4; ++i) {
        Facet f{{0, 0, 0, 0}, 0.0};
        f.a[i] = -1.0;
        facets.push_back(f);
    }

    std::vector<std::array<double, 4>> verts;
    const int m = static_cast<int>(facets.size());
    std::array<int, 4> idx;
    for (idx[0] = 0; idx[0] < m; ++idx[0])
        for (idx[1] = idx[0] + 1; idx[1] < m; ++idx[1])
            for (idx[2] = idx[1] + 1; idx[2] < m; ++idx[2])
                for (idx[3] = idx[2] + 1; idx[3] < m; ++idx[3]) {
                    double A[4][5];
                    for (int r = 0; r < 4; ++r) {
                        for (int c = 0; c < 4; ++c) A[r][c] = facets[idx[r]].a[c];
                        A[r][4] = facets[idx[r]].c;
                    }
                    // Gaussian elimination with partial pivoting.
                    bool singular = false;
                    for (int col = 0; col < 4; ++col) {
                        int piv = col;
                        for (int r = col + 1; r < 4; ++r)
                            if (std::fabs(A[r][col]) > std::fabs(A[piv][col])) piv = r;
                        if (std::fabs(A[piv][col]) < 1e-9) {
                            singular = true;
                            break;
                        }
                        std::swap(A[piv], A[col]);
                        for (int r = 0; r < 4; ++r) {
                            if (r == col) continue;
                            double f = A[r][col] / A[col][col];
                            for (int c = col; c < 5; ++c) A[r][c] -= f * A[col][c];
                        }
                    }
                    if (singular) continue;
                    std::array<double, 4> x;
                    for (int r = 0; r < 4; ++r) x[r] = A[r][4] / A[r][r];
                    if (!region.contains(x, 1e-9)) continue;
                    bool dup = false;
                    for (const auto& v : verts) {
                        double d = 0.0;
                        for (int i = 0; i < 4; ++i) d = std::max(d, std::fabs(v[i] - x[i]));
                        if (d < 1e-9) {
                            dup = true;
                            break;
                        }
                    }
                    if (!dup) verts.push_back(x);
                }
    return verts;
}

RateRegion2 project_to_2(const RateRegion4& region) {
    std::vector<PartConstraint> cons;
    for (const auto& c : region.constraints) {
        PartConstraint pc;
        if (c.mask & 1) pc.mask1 |= 1;  // R10
        if (c.mask & 2) pc.mask1 |= 2;  // R11
        if (c.mask & 4) pc.mask2 |= 1;  // R20
        if (c.mask & 8) pc.mask2 |= 2;  // R22
        pc.rhs = c.rhs;
        cons.push_back(pc);
    }
    RateRegion2 out;
    Cell cell = fm_project(2, 2, cons);
    cell.label = "hk";
    out.cells.push_back(cell);
    return out;
}

}  // namespace swsc
