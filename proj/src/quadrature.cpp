#include "fso/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace fso {

namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule (QUADPACK dqk15)
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double integral;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double fv1[7], fv2[7];
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        fv1[j] = f(c - x);
        fv2[j] = f(c + x);
        const double fsum = fv1[j] + fv2[j];
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
        resk += kWgk[j] * fsum;
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
    resasc *= std::abs(h);
    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return {a, b, resk * h, err};
}

} // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol, int max_splits) {
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::priority_queue<Panel> heap;
    Panel p0 = gk15(f, a, b);
    out.evaluations = 15;
    double total = p0.integral;
    double toterr = p0.err;
    heap.push(p0);
    int splits = 0;
    while (toterr > std::max(abs_tol, rel_tol * std::abs(total)) && splits < max_splits) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) {  // interval exhausted at double resolution
            toterr -= worst.err;
            continue;
        }
        Panel l = gk15(f, worst.a, mid);
        Panel r = gk15(f, mid, worst.b);
        out.evaluations += 30;
        total += l.integral + r.integral - worst.integral;
        toterr += l.err + r.err - worst.err;
        heap.push(l);
        heap.push(r);
        ++splits;
    }
    out.value = total;
    out.error = toterr;
    out.converged = toterr <= std::max(abs_tol, rel_tol * std::abs(total));
    return out;
}

QuadResult integrate_upper(const std::function<double(double)>& f, double a,
                           double abs_tol, double rel_tol, int max_splits) {
    auto g = [&](double t) {
        const double om = 1.0 - t;
        const double x = a + t / om;
        return f(x) / (om * om);
    };
    return integrate(g, 0.0, 1.0, abs_tol, rel_tol, max_splits);
}

// 32-point Gauss-Legendre rule, symmetric; generated to 22 digits
const double GaussLegendre32::nodes[32] = {
    -0.997263861849481563545, -0.9856115115452683354002, -0.9647622555875064307738,
    -0.9349060759377396891709, -0.8963211557660521239653, -0.8493676137325699701337,
    -0.7944837959679424069631, -0.7321821187402896803874, -0.6630442669302152009751,
    -0.5877157572407623290407, -0.5068999089322293900237, -0.4213512761306353453641,
    -0.3318686022821276497799, -0.2392873622521370745446, -0.1444719615827964934852,
    -0.04830766568773831623481, 0.04830766568773831623481, 0.1444719615827964934852,
    0.2392873622521370745446,  0.3318686022821276497799,  0.4213512761306353453641,
    0.5068999089322293900237,  0.5877157572407623290407,  0.6630442669302152009751,
    0.7321821187402896803874,  0.7944837959679424069631,  0.8493676137325699701337,
    0.8963211557660521239653,  0.9349060759377396891709,  0.9647622555875064307738,
    0.9856115115452683354002,  0.997263861849481563545};
const double GaussLegendre32::weights[32] = {
    0.007018610009470096600407, 0.01627439473090567060517, 0.02539206530926205945575,
    0.03427386291302143310269,  0.04283589802222668065688, 0.05099805926237617619616,
    0.05868409347853554714528,  0.06582222277636184683765, 0.0723457941088485062254,
    0.07819389578707030647174,  0.0833119242269467552222,  0.08765209300440381114277,
    0.09117387869576388471287,  0.09384439908080456563918, 0.09563872007927485941908,
    0.09654008851472780056676,  0.09654008851472780056676, 0.09563872007927485941908,
    0.09384439908080456563918,  0.09117387869576388471287, 0.08765209300440381114277,
    0.0833119242269467552222,   0.07819389578707030647174, 0.0723457941088485062254,
    0.06582222277636184683765,  0.05868409347853554714528, 0.05099805926237617619616,
    0.04283589802222668065688,  0.03427386291302143310269, 0.02539206530926205945575,
    0.01627439473090567060517,  0.007018610009470096600407};

} // namespace fso
