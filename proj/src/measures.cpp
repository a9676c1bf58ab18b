#include "fwl/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "fwl/quadrature.hpp"

namespace fwl {

namespace {

// int_a^b dens(s x + c) psi(x) |x|^(qe-1) dx for one affine piece of u.
// dens is Phi (survival) or phi depending on the caller.
double affine_weight_integral(double s, double c, const WeightSpec& w, double qe,
                              bool survival, double a, double b) {
    if (a >= b) return 0.0;
    auto dens = [&](double z) { return survival ? w.survival(z) : w.phi(z); };

    if (w.phi_kind() == WeightSpec::PhiKind::Exp && w.psi_kind() == WeightSpec::PsiKind::One) {
        // Phi = phi = e^{-z}: closed forms via exp_segment, split at 0.
        double out = 0.0;
        if (b > 0) {
            double lo = std::max(a, 0.0);
            out += exp_segment(s, c, qe, lo, b);
        }
        if (a < 0) {
            double hi = std::min(b, 0.0);
            out += exp_segment(-s, c, qe, -hi, -a);
        }
        return out;
    }

    auto f = [&](double x) { return dens(s * x + c) * w.psi1(x); };
    if (qe == 1.0) return integrate(f, a, b, 1e-12);

    double out = 0.0;
    if (b > 0) {
        double lo = std::max(a, 0.0);
        if (lo == 0.0)
            out += integrate_power_weight(f, qe, b, 1e-12);
        else
            out += integrate([&](double x) { return f(x) * std::pow(x, qe - 1.0); }, lo, b,
                             1e-12);
    }
    if (a < 0) {
        double hi = std::min(b, 0.0);
        auto g = [&](double x) { return f(-x); };
        if (hi == 0.0)
            out += integrate_power_weight(g, qe, -a, 1e-12);
        else
            out += integrate([&](double x) { return g(x) * std::pow(x, qe - 1.0); }, -hi, -a,
                             1e-12);
    }
    return out;
}

double piece_integral(const PolyhedralFn& u, size_t i, const WeightSpec& w, bool survival) {
    const auto& g = u.generators();
    double x0 = g[i].x, x1 = g[i + 1].x;
    double s = u.slope(i);
    double c = g[i].z - s * x0;
    return affine_weight_integral(s, c, w, w.radial_exponent(1), survival, x0, x1);
}

double radial_point_weight(double x, double qe) { return std::pow(std::abs(x), qe - 1.0); }

void check_endpoint(double x, double qe) {
    if (qe < 1.0 && std::abs(x) < 1e-12)
        throw std::runtime_error("singular boundary configuration");
}

// ---- 2D cell machinery ------------------------------------------------------

double cross2(Vec2 a, Vec2 b) { return a.x * b.z - a.z * b.x; }

// Clip a convex polygon against the axis rectangle [x0,x1]x[z0,z1].
std::vector<Vec2> clip_rect(std::vector<Vec2> poly, double x0, double x1, double z0,
                            double z1) {
    auto clip = [&](const std::vector<Vec2>& in, auto inside, auto isect) {
        std::vector<Vec2> out;
        size_t n = in.size();
        for (size_t i = 0; i < n; ++i) {
            Vec2 a = in[i], b = in[(i + 1) % n];
            bool ia = inside(a), ib = inside(b);
            if (ia) out.push_back(a);
            if (ia != ib) out.push_back(isect(a, b));
        }
        return out;
    };
    auto cut_x = [](Vec2 a, Vec2 b, double x) {
        double t = (x - a.x) / (b.x - a.x);
        return Vec2{x, a.z + t * (b.z - a.z)};
    };
    auto cut_z = [](Vec2 a, Vec2 b, double z) {
        double t = (z - a.z) / (b.z - a.z);
        return Vec2{a.x + t * (b.x - a.x), z};
    };
    poly = clip(poly, [&](Vec2 p) { return p.x >= x0; },
                [&](Vec2 a, Vec2 b) { return cut_x(a, b, x0); });
    if (poly.empty()) return poly;
    poly = clip(poly, [&](Vec2 p) { return p.x <= x1; },
                [&](Vec2 a, Vec2 b) { return cut_x(a, b, x1); });
    if (poly.empty()) return poly;
    poly = clip(poly, [&](Vec2 p) { return p.z >= z0; },
                [&](Vec2 a, Vec2 b) { return cut_z(a, b, z0); });
    if (poly.empty()) return poly;
    poly = clip(poly, [&](Vec2 p) { return p.z <= z1; },
                [&](Vec2 a, Vec2 b) { return cut_z(a, b, z1); });
    return poly;
}

constexpr double kG4x[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                            0.8611363115940526};
constexpr double kG4w[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                            0.3478548451374538};

template <class F>
double quad_rect(F&& f, double x0, double x1, double z0, double z1) {
    double cx = 0.5 * (x0 + x1), hx = 0.5 * (x1 - x0);
    double cz = 0.5 * (z0 + z1), hz = 0.5 * (z1 - z0);
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            s += kG4w[i] * kG4w[j] * f(cx + hx * kG4x[i], cz + hz * kG4x[j]);
    return s * hx * hz;
}

template <class F>
double quad_triangle(F&& f, Vec2 a, Vec2 b, Vec2 c) {
    double area2 = cross2(b - a, c - a);  // signed, 2x area
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
        double xi = 0.5 * (1.0 + kG4x[i]);
        for (int j = 0; j < 4; ++j) {
            double eta = 0.5 * (1.0 + kG4x[j]) * (1.0 - xi);
            Vec2 p = a + (b - a) * xi + (c - a) * eta;
            s += 0.25 * kG4w[i] * kG4w[j] * (1.0 - xi) * f(p.x, p.z);
        }
    }
    return s * area2;
}

template <class F>
double quad_polygon(F&& f, const std::vector<Vec2>& poly) {
    if (poly.size() < 3) return 0.0;
    double s = 0.0;
    for (size_t i = 1; i + 1 < poly.size(); ++i)
        s += quad_triangle(f, poly[0], poly[i], poly[i + 1]);
    return s;
}

// Integrate integrand(x, y, cell_i, cell_j) over the grid box, optionally
// clipped against a convex polygon.
template <class F>
double integrate_cells_2d(const GridFn& u, const EpigraphBody* clip, F&& integrand) {
    double total = 0.0;
    Interval cx{0, 0}, cz{0, 0};
    if (clip) {
        cx = clip->x_range();
        cz.lo = cz.hi = clip->vertices().front().z;
        for (const Vec2& v : clip->vertices()) {
            cz.lo = std::min(cz.lo, v.z);
            cz.hi = std::max(cz.hi, v.z);
        }
    }
    for (int i = 0; i + 1 < u.shape()[0]; ++i) {
        double x0 = u.coord(0, i), x1 = u.coord(0, i + 1);
        if (clip && (x1 < cx.lo || x0 > cx.hi)) continue;
        for (int j = 0; j + 1 < u.shape()[1]; ++j) {
            double z0 = u.coord(1, j), z1 = u.coord(1, j + 1);
            if (clip && (z1 < cz.lo || z0 > cz.hi)) continue;
            auto f = [&](double x, double y) { return integrand(x, y, i, j); };
            if (!clip) {
                total += quad_rect(f, x0, x1, z0, z1);
                continue;
            }
            bool all_in = clip->contains({x0, z0}, 0.0) && clip->contains({x1, z0}, 0.0) &&
                          clip->contains({x0, z1}, 0.0) && clip->contains({x1, z1}, 0.0);
            if (all_in) {
                total += quad_rect(f, x0, x1, z0, z1);
            } else {
                auto piece = clip_rect(clip->vertices(), x0, x1, z0, z1);
                total += quad_polygon(f, piece);
            }
        }
    }
    return total;
}

// Bilinear value in cell (i,j); +inf when a corner is +inf.
double cell_value(const GridFn& u, int i, int j, double x, double y) {
    double v00 = u.at(i, j), v10 = u.at(i + 1, j), v01 = u.at(i, j + 1),
           v11 = u.at(i + 1, j + 1);
    if (!is_finite(v00) || !is_finite(v10) || !is_finite(v01) || !is_finite(v11)) return kInf;
    double tx = (x - u.coord(0, i)) / u.step(0);
    double ty = (y - u.coord(1, j)) / u.step(1);
    return (1 - tx) * (1 - ty) * v00 + tx * (1 - ty) * v10 + (1 - tx) * ty * v01 +
           tx * ty * v11;
}

std::array<double, 2> cell_gradient(const GridFn& u, int i, int j) {
    double v00 = u.at(i, j), v10 = u.at(i + 1, j), v01 = u.at(i, j + 1),
           v11 = u.at(i + 1, j + 1);
    return {((v10 - v00) + (v11 - v01)) / (2.0 * u.step(0)),
            ((v01 - v00) + (v11 - v10)) / (2.0 * u.step(1))};
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    for (auto& a : atoms_) {
        if (a.weight < -1e-10) throw std::invalid_argument("negative atom weight");
        if (a.weight < 0) a.weight = 0;
        mass_ += a.weight;
    }
}

double DiscreteMeasure::integrate(
    const std::function<double(std::array<double, 2>)>& f) const {
    double s = 0.0;
    for (const auto& a : atoms_) s += a.weight * f(a.where);
    return s;
}

double epigraph_measure(const PolyhedralFn& u, const WeightSpec& w) {
    double out = 0.0;
    for (size_t i = 0; i < u.piece_count(); ++i) out += piece_integral(u, i, w, true);
    return out;
}

double epigraph_measure(const GridFn& u, const WeightSpec& w,
                        const std::optional<Interval>& clip1, const EpigraphBody* clip2) {
    if (u.dim() == 1) {
        double qe = w.radial_exponent(1);
        double out = 0.0;
        for (int i = 0; i + 1 < u.shape()[0]; ++i) {
            double v0 = u.at(i), v1 = u.at(i + 1);
            if (!is_finite(v0) || !is_finite(v1)) continue;
            double x0 = u.coord(0, i), x1 = u.coord(0, i + 1);
            if (clip1) {
                x0 = std::max(x0, clip1->lo);
                x1 = std::min(x1, clip1->hi);
                if (x0 >= x1) continue;
            }
            double s = (v1 - v0) / u.step(0);
            double c = v0 - s * u.coord(0, i);
            out += affine_weight_integral(s, c, w, qe, true, x0, x1);
        }
        return out;
    }

    double qe = w.radial_exponent(2);
    if (w.q() && qe != 2.0) {
        // Polar route for the singular radial weight.
        if (!clip2 || !clip2->contains({0, 0}, -1e-9))
            throw std::runtime_error(
                "singular radial weight requires a domain polygon with interior origin");
        auto inner = [&](double theta) {
            Vec2 d{std::cos(theta), std::sin(theta)};
            double R = clip2->radial(d);
            auto g = [&](double r) {
                double x = r * d.x, y = r * d.z;
                double v = u(x, y);
                return w.survival(v) * w.psi2(x, y);
            };
            return integrate_power_weight(g, qe, R, 1e-9);
        };
        return integrate(inner, 0.0, 2.0 * M_PI, 1e-9);
    }

    auto integrand = [&](double x, double y, int i, int j) {
        double v = cell_value(u, i, j, x, y);
        double out = w.survival(v) * w.psi2(x, y);
        if (qe != 2.0) out *= std::pow(x * x + y * y, 0.5 * (qe - 2.0));
        return out;
    };
    return integrate_cells_2d(u, clip2, integrand);
}

DiscreteMeasure surface_area_measure(const EpigraphBody& k) {
    if (k.degenerate() || k.area() <= 0) throw std::runtime_error("degenerate body");
    std::vector<Atom> atoms;
    for (const auto& f : k.facets()) atoms.push_back({{f.normal.x, f.normal.z}, f.length});
    return DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure weighted_surface_area_measure(const EpigraphBody& k, const Density2& density,
                                              std::optional<double> q) {
    if (k.degenerate() || k.area() <= 0) throw std::runtime_error("degenerate body");
    double qe = q.value_or(1.0);
    std::vector<Atom> atoms;
    for (const auto& f : k.facets()) {
        double weight = 0.0;
        Vec2 d = (f.b - f.a) * (1.0 / f.length);  // unit tangent
        auto along = [&](double s) { return f.a + d * s; };
        if (!q || qe == 1.0) {
            weight = integrate(
                [&](double s) {
                    Vec2 p = along(s);
                    return density(p.x, p.z);
                },
                0.0, f.length, 1e-11);
        } else if (std::abs(d.x) < 1e-14) {
            // vertical facet: |x| constant along it
            if (qe < 1.0 && std::abs(f.a.x) < 1e-12)
                throw std::runtime_error("singular boundary configuration");
            weight = radial_point_weight(f.a.x, qe) *
                     integrate(
                         [&](double s) {
                             Vec2 p = along(s);
                             return density(p.x, p.z);
                         },
                         0.0, f.length, 1e-11);
        } else {
            // |x| is affine in arclength; substitute tau = |x| on each side
            // of the zero crossing so the power singularity is integrated
            // exactly by the weighted rule.
            double sz = -f.a.x / d.x;  // arclength where x = 0
            auto part = [&](double s0, double s1) {
                if (s0 >= s1) return 0.0;
                double xa = std::abs(along(s0).x), xb = std::abs(along(s1).x);
                double lo = std::min(xa, xb), hi = std::max(xa, xb);
                double sign = (along(0.5 * (s0 + s1)).x >= 0) ? 1.0 : -1.0;
                auto g = [&](double tau) {
                    double s = (sign * tau - f.a.x) / d.x;
                    Vec2 p = along(s);
                    return density(p.x, p.z) / std::abs(d.x);
                };
                if (lo < 1e-12 * (1 + hi))
                    return integrate_power_weight(g, qe, hi, 1e-11);
                return integrate([&](double tau) { return g(tau) * std::pow(tau, qe - 1.0); },
                                 lo, hi, 1e-11);
            };
            if (sz > 0 && sz < f.length)
                weight = part(0.0, sz) + part(sz, f.length);
            else
                weight = part(0.0, f.length);
        }
        atoms.push_back({{f.normal.x, f.normal.z}, weight});
    }
    return DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure moment_measure(const PolyhedralFn& u, const WeightSpec& w) {
    std::vector<Atom> atoms;
    for (size_t i = 0; i < u.piece_count(); ++i)
        atoms.push_back({{u.slope(i), 0.0}, piece_integral(u, i, w, false)});
    return DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure moment_measure(const GridFn& u, const WeightSpec& w, int bins) {
    if (bins < 1) throw std::invalid_argument("moment_measure: bins < 1");
    double qe = w.radial_exponent(u.dim());
    // First pass: gradient range over finite cells.
    double glo[2] = {kInf, kInf}, ghi[2] = {-kInf, -kInf};
    auto scan = [&](auto&& fn) {
        if (u.dim() == 1) {
            for (int i = 0; i + 1 < u.shape()[0]; ++i) {
                double v0 = u.at(i), v1 = u.at(i + 1);
                if (!is_finite(v0) || !is_finite(v1)) continue;
                double g = (v1 - v0) / u.step(0);
                double xm = 0.5 * (u.coord(0, i) + u.coord(0, i + 1));
                double vm = 0.5 * (v0 + v1);
                double wgt = w.phi(vm) * w.psi1(xm) * std::pow(std::abs(xm), qe - 1.0) *
                             u.step(0);
                fn(g, 0.0, wgt);
            }
        } else {
            for (int i = 0; i + 1 < u.shape()[0]; ++i)
                for (int j = 0; j + 1 < u.shape()[1]; ++j) {
                    double vm = cell_value(u, i, j, 0.5 * (u.coord(0, i) + u.coord(0, i + 1)),
                                           0.5 * (u.coord(1, j) + u.coord(1, j + 1)));
                    if (!is_finite(vm)) continue;
                    auto g = cell_gradient(u, i, j);
                    double xm = 0.5 * (u.coord(0, i) + u.coord(0, i + 1));
                    double ym = 0.5 * (u.coord(1, j) + u.coord(1, j + 1));
                    double r2 = xm * xm + ym * ym;
                    double wgt = w.phi(vm) * w.psi2(xm, ym) * u.step(0) * u.step(1);
                    if (qe != 2.0) wgt *= std::pow(r2, 0.5 * (qe - 2.0));
                    fn(g[0], g[1], wgt);
                }
        }
    };
    scan([&](double gx, double gy, double) {
        glo[0] = std::min(glo[0], gx);
        ghi[0] = std::max(ghi[0], gx);
        glo[1] = std::min(glo[1], gy);
        ghi[1] = std::max(ghi[1], gy);
    });
    if (!is_finite(glo[0])) return DiscreteMeasure({});
    for (int a = 0; a < 2; ++a)
        if (ghi[a] - glo[a] < 1e-12) ghi[a] = glo[a] + 1e-12;

    std::map<std::pair<int, int>, double> bucket;
    scan([&](double gx, double gy, double wgt) {
        int bi = std::min(bins - 1, static_cast<int>((gx - glo[0]) / (ghi[0] - glo[0]) * bins));
        int bj = u.dim() == 1 ? 0
                              : std::min(bins - 1, static_cast<int>((gy - glo[1]) /
                                                                   (ghi[1] - glo[1]) * bins));
        bucket[{bi, bj}] += wgt;
    });
    std::vector<Atom> atoms;
    for (const auto& [key, wgt] : bucket) {
        double cx = glo[0] + (key.first + 0.5) * (ghi[0] - glo[0]) / bins;
        double cy = u.dim() == 1 ? 0.0 : glo[1] + (key.second + 0.5) * (ghi[1] - glo[1]) / bins;
        atoms.push_back({{cx, cy}, wgt});
    }
    return DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure surface_measure_fn(const PolyhedralFn& u, const WeightSpec& w,
                                   BoundaryDensity kind) {
    double qe = w.radial_exponent(1);
    Interval d = u.domain();
    auto dens = [&](double z) {
        return kind == BoundaryDensity::Phi ? w.phi(z) : w.survival(z);
    };
    check_endpoint(d.lo, qe);
    check_endpoint(d.hi, qe);
    std::vector<Atom> atoms;
    atoms.push_back(
        {{-1.0, 0.0}, dens(u.generators().front().z) * w.psi1(d.lo) * radial_point_weight(d.lo, qe)});
    atoms.push_back(
        {{1.0, 0.0}, dens(u.generators().back().z) * w.psi1(d.hi) * radial_point_weight(d.hi, qe)});
    return DiscreteMeasure(std::move(atoms));
}

double bulk_integral(const PolyhedralFn& u, const Perturbation& zeta, const WeightSpec& w) {
    double out = 0.0;
    for (size_t i = 0; i < u.piece_count(); ++i)
        out += zeta(u.slope(i)) * piece_integral(u, i, w, false);
    return out;
}

double boundary_integral(const PolyhedralFn& u, const Perturbation& zeta, const WeightSpec& w) {
    double qe = w.radial_exponent(1);
    Interval d = u.domain();
    check_endpoint(d.lo, qe);
    check_endpoint(d.hi, qe);
    double lo_term = zeta.recession(-1.0) * w.survival(u.generators().front().z) *
                     w.psi1(d.lo) * radial_point_weight(d.lo, qe);
    double hi_term = zeta.recession(1.0) * w.survival(u.generators().back().z) * w.psi1(d.hi) *
                     radial_point_weight(d.hi, qe);
    return lo_term + hi_term;
}

double bulk_integral(const GridFn& u, const Perturbation& zeta, const WeightSpec& w,
                     const EpigraphBody& domain) {
    if (u.dim() != 2) throw std::invalid_argument("grid bulk_integral: 2D only");
    double qe = w.radial_exponent(2);
    auto integrand = [&](double x, double y, int i, int j) {
        double v = cell_value(u, i, j, x, y);
        if (!is_finite(v)) return 0.0;
        auto g = cell_gradient(u, i, j);
        double out = zeta(g[0], g[1]) * w.phi(v) * w.psi2(x, y);
        if (qe != 2.0) out *= std::pow(x * x + y * y, 0.5 * (qe - 2.0));
        return out;
    };
    return integrate_cells_2d(u, &domain, integrand);
}

double boundary_integral(const GridFn& u, const Perturbation& zeta, const WeightSpec& w,
                         const EpigraphBody& domain) {
    if (u.dim() != 2) throw std::invalid_argument("grid boundary_integral: 2D only");
    double qe = w.radial_exponent(2);
    double h = std::min(u.step(0), u.step(1));
    double out = 0.0;
    for (const auto& f : domain.facets()) {
        double rho = zeta.recession(f.normal.x, f.normal.z);
        Vec2 d = (f.b - f.a) * (1.0 / f.length);
        auto g = [&](double s) {
            Vec2 p = f.a + d * s;
            // boundary value of u by linear extrapolation from two interior samples
            double u1 = u(p.x - 0.5 * h * f.normal.x, p.z - 0.5 * h * f.normal.z);
            double u2 = u(p.x - h * f.normal.x, p.z - h * f.normal.z);
            double ub = is_finite(u1) && is_finite(u2) ? 2.0 * u1 - u2 : u(p.x, p.z);
            double val = rho * w.survival(ub) * w.psi2(p.x, p.z);
            if (qe != 2.0) val *= std::pow(p.x * p.x + p.z * p.z, 0.5 * (qe - 2.0));
            return val;
        };
        out += integrate(g, 0.0, f.length, 1e-10);
    }
    return out;
}

double polygon_measure(const EpigraphBody& k, const Density2& density,
                       std::optional<double> q) {
    if (k.degenerate()) return 0.0;
    double qe = q.value_or(1.0);
    PolyhedralFn floor = floor_body(k);
    ConcaveChain ceil = ceil_body(k);

    // slab breakpoints: vertices of both chains, plus x = 0 for the radial factor
    std::vector<double> xs;
    for (const auto& g : floor.generators()) xs.push_back(g.x);
    for (const auto& g : ceil.neg.generators()) xs.push_back(g.x);
    if (q) xs.push_back(0.0);
    std::sort(xs.begin(), xs.end());
    Interval xr = k.x_range();

    auto column = [&](double x) {
        double lo = floor(x);
        double hi = ceil(x);
        if (!is_finite(lo) || !is_finite(hi) || hi <= lo) return 0.0;
        return integrate([&](double z) { return density(x, z); }, lo, hi, 1e-11);
    };

    double out = 0.0;
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
        double a = std::max(xs[i], xr.lo), b = std::min(xs[i + 1], xr.hi);
        if (a >= b) continue;
        if (!q || qe == 1.0) {
            out += integrate(column, a, b, 1e-10);
        } else if (a >= 0.0) {
            if (a < 1e-14)
                out += integrate_power_weight(column, qe, b, 1e-10);
            else
                out += integrate([&](double x) { return column(x) * std::pow(x, qe - 1.0); },
                                 a, b, 1e-10);
        } else {
            auto neg = [&](double x) { return column(-x); };
            if (-b < 1e-14)
                out += integrate_power_weight(neg, qe, -a, 1e-10);
            else
                out += integrate([&](double x) { return neg(x) * std::pow(x, qe - 1.0); }, -b,
                                 -a, 1e-10);
        }
    }
    return out;
}

}  // namespace fwl
