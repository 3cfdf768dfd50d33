#pragma once

// Named groups used by the CLI, the tests and the benchmarks.

#include "latlab/euc_geom.hpp"
#include "latlab/hyp_geom.hpp"
#include "latlab/word_ball.hpp"

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace latlab::presets {

using MoebiusGroup = FinitelyGeneratedGroup<hyp::MoebiusIsometry>;
using EuclideanGroup = FinitelyGeneratedGroup<euc::EuclideanIsometry>;

/// S = [[0,-1],[1,0]], T = [[1,1],[0,1]].
MoebiusGroup sl2z();
/// <z -> z + 1>.
MoebiusGroup cusp_model();
/// <diag(e^{l/2}, e^{-l/2})>, translation length l along the imaginary axis.
MoebiusGroup cyclic_hyperbolic(double ell);
/// Opposite-side pairings of the regular hyperbolic octagon with all angles pi/4.
MoebiusGroup octagon_genus2();

/// cosh r = 1 + sqrt 2: inradius of the octagon, half its pairing translation.
double octagon_inradius();
/// cosh R = 3 + 2 sqrt 2: circumradius.
double octagon_circumradius();
/// Poincare disk to upper half-plane, w -> i(1 + w)/(1 - w).
std::complex<double> disk_to_half_plane(std::complex<double> w);
std::complex<double> half_plane_to_disk(std::complex<double> z);
/// Closed octagon in the disk, with a little slack.
bool in_octagon(std::complex<double> w, double slack = 1e-12);

/// "sl2z", "cusp-model", "octagon-genus2", "cyclic-hyperbolic(l)" or "sl2z-T".
MoebiusGroup moebius_preset(const std::string& name);

/// Unit translations of R^n.
EuclideanGroup zn_translations(int n);
/// Unit translations of R^2 and the half-turn about the origin.
EuclideanGroup p2_wallpaper();
/// Screw motion of R^3: rotation by `angle` about the z-axis with shift 1, plus x, y translations.
EuclideanGroup screw_motion(double angle);
EuclideanGroup euclidean_preset(const std::string& name);

/// Rotations by 2 pi/5 about (0, 1, phi) and 2 pi/3 about (1, 1, 1); they generate A5 in SO(3).
std::vector<Eigen::MatrixXcd> a5_generators();
/// [[i,0],[0,-i]] and [[0,1],[-1,0]] in SU(2).
std::vector<Eigen::MatrixXcd> q8_generators();
/// Rotation about a unit axis, as a complex matrix.
Eigen::MatrixXcd so3_rotation(Eigen::Vector3d axis, double angle);

}  // namespace latlab::presets
