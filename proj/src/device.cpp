#include "sram/device.hpp"

#include "sram/constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sram {

double mos_current(double vgs, double vds, const MosParams& p) {
    if (!std::isfinite(vgs) || !std::isfinite(vds))
        throw std::domain_error("mos_current: non-finite terminal voltage");
    if (p.polarity == Polarity::NType) {
        double ig = std::exp((vgs - p.Vth) / (p.n * p.UT));
        return p.I0 * ig * (1.0 - std::exp(-vds / p.UT));
    }
    // p-type: mirror both terminal signs of the n-type expression.
    double ig = std::exp((-vgs - p.Vth) / (p.n * p.UT));
    return -p.I0 * ig * (1.0 - std::exp(vds / p.UT));
}

namespace {

struct BranchCurrents {
    double iup, idn;        // both >= 0
    double dup_din, ddn_din;   // d/d(effective input)
    double dup_dout, ddn_dout;
    bool clamped;
};

BranchCurrents branch_currents(double vin, double vout,
                               const InverterParams& inv, double vdd) {
    BranchCurrents b{};
    double vin_eff = vin + inv.dV;
    b.clamped = vin_eff <= 0.0 || vin_eff >= vdd;
    vin_eff = std::clamp(vin_eff, 0.0, vdd);

    // Pull-down n-type: gate at vin_eff, source grounded, drain at vout.
    const MosParams& mn = inv.nmos;
    double gn = std::exp((vin_eff - mn.Vth) / (mn.n * mn.UT));
    double en = std::exp(-vout / mn.UT);
    b.idn = mn.I0 * gn * (1.0 - en);
    b.ddn_din = b.idn / (mn.n * mn.UT);
    b.ddn_dout = mn.I0 * gn * en / mn.UT;

    // Pull-up p-type: gate at vin_eff, source at vdd, drain at vout.
    const MosParams& mp = inv.pmos;
    double gp = std::exp(((vdd - vin_eff) - mp.Vth) / (mp.n * mp.UT));
    double ep = std::exp(-(vdd - vout) / mp.UT);
    b.iup = mp.I0 * gp * (1.0 - ep);
    b.dup_din = -b.iup / (mp.n * mp.UT);
    b.dup_dout = -mp.I0 * gp * ep / mp.UT;
    return b;
}

}  // namespace

double inverter_node_current(double vin, double vout, const InverterParams& inv,
                             double vdd) {
    BranchCurrents b = branch_currents(vin, vout, inv, vdd);
    return b.iup - b.idn;
}

InverterDerivs inverter_node_derivs(double vin, double vout,
                                    const InverterParams& inv, double vdd) {
    BranchCurrents b = branch_currents(vin, vout, inv, vdd);
    InverterDerivs d;
    d.i = b.iup - b.idn;
    d.di_dvin = b.clamped ? 0.0 : (b.dup_din - b.ddn_din);
    d.di_dvout = b.dup_dout - b.ddn_dout;
    return d;
}

double node_noise_psd(double vin, double vout, const InverterParams& inv,
                      double vdd, double access_noise) {
    BranchCurrents b = branch_currents(vin, vout, inv, vdd);
    return 2.0 * kElectronCharge * (std::abs(b.iup) + std::abs(b.idn)) + access_noise;
}

double inverter_branch_sum(double vin, double vout, const InverterParams& inv,
                           double vdd) {
    BranchCurrents b = branch_currents(vin, vout, inv, vdd);
    return std::abs(b.iup) + std::abs(b.idn);
}

}
