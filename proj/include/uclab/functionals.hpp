#ifndef UCLAB_FUNCTIONALS_HPP
#define UCLAB_FUNCTIONALS_HPP

#include "uclab/media.hpp"
#include "uclab/norms.hpp"
#include "uclab/solvers.hpp"

namespace uclab {

// Composite data / solution functionals over Q_T = Omega x (-T, T):
//   N(u)          solution size in the Y_alpha norm
//   D(u)          residual || Pu ||_{H1(I_T, L2)}
//   Dfrak(u)      boundary data with the J_{delta/2} refinements
//   Dtilde(u)     endpoint gradient data at +-T
//   Dhat(u)       lateral Cauchy data only
//   Dtilde_bar(u) the smallness-gate combination
struct Functionals {
  double N = 0.0;
  double D = 0.0;
  double Dfrak = 0.0;
  double Dtilde = 0.0;
  double Dhat = 0.0;
  double Dtilde_bar = 0.0;
  EnergyProfile energy;
};

struct FunctionalParams {
  double delta = 0.5; // the J-window parameter (delta-bar in the assembly)
  double T = 4.0;
  double alpha = 0.5;
  int nt_quad = 65;
  int energy_samples = 33;
  bool with_holder = true; // the C^{1,alpha} part of N is the expensive piece
  // the Hoelder seminorm is an O(N^2) pair scan; it runs on its own coarse
  // sample grid (exact on that sample set, a lower bound of the continuum norm)
  int holder_nx = 17;
  int holder_nt = 33;
};

inline Functionals compute_functionals(const SpaceTimeField& u, const AnisotropicMedium& med,
                                       const FunctionalParams& fp,
                                       const SubBoundary* gamma_opt = nullptr) {
  Functionals F;
  SubBoundary whole = SubBoundary::whole(u.grid.box);
  const SubBoundary* gamma = gamma_opt ? gamma_opt : &whole;
  auto IT = window_full(fp.T);
  auto J = window_J(fp.delta / 2.0, fp.T);

  // N(u) = ||u||_{H2(I,H2)} + ||u||_{H3(I,H1)} + ||u||_{C^{1,alpha}} + ||u||_{H1(I,H1)}
  F.N = bochner_norm(u, 2, SpaceNorm::H2, IT, nullptr, fp.nt_quad) +
        bochner_norm(u, 3, SpaceNorm::H1, IT, nullptr, fp.nt_quad) +
        bochner_norm(u, 1, SpaceNorm::H1, IT, nullptr, fp.nt_quad);
  if (fp.with_holder) {
    SpaceGrid gh(u.grid.box, std::min(u.grid.npts[0], fp.holder_nx));
    auto uh = SpaceTimeField::sampled(gh, TimeAxis(u.time.a, u.time.b, fp.holder_nt), u.analytic,
                                      u.label);
    F.N += c1alpha_norm(uh, fp.alpha);
  }

  // D(u) = || Pu ||_{H1(I_T, L2)}
  {
    double fd_step = 1e-5 * diameter(u.grid.box);
    SpaceTimeField pu(u.grid, u.time);
    pu.analytic = make_pu_analytic(med, u.analytic, fd_step);
    F.D = bochner_norm(pu, 1, SpaceNorm::L2, IT, nullptr, fp.nt_quad);
  }

  double h11 = bochner_norm(u, 0, SpaceNorm::BdH1, IT, gamma, fp.nt_quad) +
               bochner_norm(u, 1, SpaceNorm::BdL2, IT, gamma, fp.nt_quad);
  double dnu_l2 = bochner_norm(u, 0, SpaceNorm::BdNormalDerivL2, IT, gamma, fp.nt_quad);
  F.Dhat = h11 + dnu_l2;

  double tr32 = bochner_norm(u, 3, SpaceNorm::BdH32Surr, J, &whole, fp.nt_quad);
  double dnu_h1 = bochner_norm(u, 1, SpaceNorm::BdNormalDerivL2, J, &whole, fp.nt_quad);
  F.Dfrak = tr32 + dnu_h1 + F.Dhat;

  for (double s : {-1.0, 1.0})
    for (int k = 0; k <= 1; ++k) {
      Slice sl = make_slice(u, s * fp.T, k, 1);
      F.Dtilde += slice_space_norm(u.grid, sl, SpaceNorm::GradL2);
    }

  F.Dtilde_bar = F.D + F.Dhat + tr32 + dnu_h1;

  for (int i = 0; i < fp.energy_samples; ++i) {
    double t = -fp.T + 2.0 * fp.T * i / (fp.energy_samples - 1);
    F.energy.times.push_back(t);
    F.energy.values.push_back(energy(u, med, t));
  }
  return F;
}

} // namespace uclab

#endif
