// Copyright 2026 The jcblockade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Steady state of the driven Jaynes-Cummings system at the two-photon
// resonance: photon statistics, forward-scattered g2(0)/g3(0), and the first
// few samples of the side-scattered g2(tau) next to the four-level formula.

#include <cstdio>

#include "jcb/four_level.hpp"
#include "jcb/observables.hpp"
#include "jcb/regression.hpp"
#include "jcb/steadystate.hpp"

int main() {
  jcb::ModelParams p;  // g = 1000 kappa, gamma = 2 kappa, n_max = 30
  p.eps_d = 40.0;
  p.delta_omega = jcb::resonant_drive_frequency(p);

  const jcb::Superoperator l = jcb::build_liouvillian(p);
  const jcb::DensityMatrix rho = jcb::steady_state(l);
  const jcb::DensityMatrix field = jcb::partial_trace_atom(rho);
  const auto pn = jcb::fock_occupations(field);

  std::printf("detuning        %.5f g\n", p.delta_omega / p.g);
  std::printf("P0 P1 P2        %.3f %.3f %.3f\n", pn[0], pn[1], pn[2]);
  std::printf("F2              %.4f\n", jcb::fidelity_m(field, 2));
  std::printf("<sigma_z>       %.4f\n", jcb::atomic_inversion(rho));
  std::printf("gF2(0) gF3(0)   %.4f %.4f\n", jcb::gn_zero_delay(rho, 2),
              jcb::gn_zero_delay(rho, 3));

  const jcb::FourLevelParams fp = jcb::derive_params(p);
  const auto tau = jcb::beat_resolving_grid(fp.nu, 0.01);
  const auto numeric = jcb::g2_atomic(l, rho, tau);
  const auto analytic = jcb::g2_analytic(fp, tau);
  std::printf("\n%10s %12s %12s\n", "tau*kappa", "g2 full", "g2 4-level");
  for (size_t k = 0; k < tau.size(); k += 4)
    std::printf("%10.5f %12.6f %12.6f\n", tau[k], numeric.values[k].real(),
                analytic.values[k].real());
  return 0;
}
