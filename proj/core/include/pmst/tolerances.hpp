#pragma once

namespace pmst {

// Every numerical threshold used by the library lives here so that callers
// (and the acceptance suite) can pin or override them in one place.
struct Tolerances {
  double hermiticity = 1e-12;        // max asymmetry absorbed on ingestion
  double unit_norm = 1e-12;          // pure-state norm deviation
  double psd = 1e-10;                // density/POVM element min-eig slack
  double trace_one = 1e-10;          // density-matrix trace deviation
  double povm_completeness = 1e-10;  // POVM sum-to-identity deviation
  double overlap_imag = 1e-12;       // imaginary residue allowed in tr(ab)
  double psd_sqrt_floor = 1e-8;      // psd_sqrt rejects eigenvalues below -this
  double support_rel = 1e-13;        // relative cutoff defining the support
  double completion_rank_rel = 1e-10;  // eigenvalue drop in ensemble completion
  double completion_residual = 1e-9;   // ||sum a_i psi_i - I/D|| allowed
  double genericity_floor = 1e-3;    // min_k tr(psi |k><k|) after randomize_basis
  int genericity_retries = 64;
  double tie_break = 1e-12;          // top_eigenstate degeneracy window
  double kernel_rel = 1e-9;          // POVM kernel eigenvalue cutoff (relative)
  double extremal_gram = 1e-9;       // min Gram eigenvalue declaring extremality
  double unitarity = 1e-10;
  double orthogonality = 1e-9;       // O O^T = I check on 3x3 inputs
  double det_window = 1e-6;          // |det -+ 1| rotation/reflection decision
  double phase_floor = 1e-12;        // fix_x_phases vanishing-overlap abort
  double dedup_overlap = 1e-10;      // shared-state dedup in multi-POVM scenarios
  double profile_match = 1e-8;       // Bargmann profile entrywise comparison
  double triple_modulus_floor = 1e-14;  // below this the phase is flagged undefined
  double behavior_normalization = 1e-9;
  double witness_saturation = 1e-9;

  static const Tolerances& defaults();
};

}  // namespace pmst
