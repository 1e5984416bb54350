// Generated by tests/oracles/freeze.py (mpmath, 50 digits). Do not edit by hand.
#pragma once

#include <complex>
#include <vector>

namespace oracle {

using C = std::complex<double>;

// couplings at q = 1.2, g = 0.5
inline const C couplings_g_tilde = C{0.50862071065450856562, 0.0};
inline const C couplings_xi = C{0.0, -0.18649426057331976912};

// shortening roots at x- = 2+i, M = 1, q = 1.1, g = 0.4 (larger modulus first)
inline const std::vector<C> shortening_roots{C{2.7813074533325251088, 3.8643561256571769103}, C{0.12269254666747536011, -0.17046935739479072732}};

// central elements and labels at x- = 1.3+0.4i, M = 2, q = 1.05, g = 0.6, gamma = 1
inline const C central_x_plus = C{2.3283552365305557866, 4.0689453963939758972};
inline const C central_U = C{1.6334624627258283525, 0.67909428479496921428};
inline const C central_V = C{1.0493136387790888247, -0.018601311804099167077};
inline const C central_z = C{1.1067829633737003352, -0.12910250529282188115};
inline const std::vector<C> central_labels{C{0.54739682297888080113, 0.0}, C{1.2895742778494918594, -0.829806231161783425}, C{0.061206455232455146738, -0.10124350646729807239}, C{1.8172129532269469559, -0.33285871361524065106}};

// closed-form K: q = 1.3+0.2i, g = 0.7+0.1i, alpha = 0.6+0.8i, alpha~ = 0.9+0.3i,
// gamma = 1.1+0.3i, gamma_bar = 0.8-0.2i, x- = 0.8+0.6i
inline const C kmatrix_M2_z = C{2.6253086470784745018, -0.96016330508655358746};
inline const std::vector<C> kmatrix_M2_A{C{1.0, 5.9791497396720220069e-52}, C{-0.27661690104571357663, -0.16934857901666148448}, C{0.027920801424141826264, 0.0066558299951072044873}};
inline const std::vector<C> kmatrix_M2_B{C{0.0, 0.0}, C{0.27297476511086484884, -0.93781858431632098236}, C{0.0, 0.0}};
inline const std::vector<C> kmatrix_M2_C{C{0.63076923076923076903, -0.35384615384615382126}, C{-0.25539715686020634633, 0.041375392461541006502}};
inline const std::vector<C> kmatrix_M2_D{C{0.0, 0.0}, C{0.060141482385995056869, 0.051532059141493313731}, C{0.0, 0.0}};
inline const std::vector<C> kmatrix_M2_E{C{0.0, 0.0}, C{-0.047922660712656563423, 1.6492528164373775779}, C{0.0, 0.0}};
inline const C kmatrix_M3_z = C{3.6049339022193276971, -0.72315056719682477683};
inline const std::vector<C> kmatrix_M3_A{C{1.0, 1.4550125843281094203e-52}, C{-0.34125370937800491368, -0.23885379255015232373}, C{0.051809739911903701163, 0.041388965021158060109}, C{-0.0030736624797805744428, 0.00010781376972199463368}};
inline const std::vector<C> kmatrix_M3_B{C{0.0, 0.0}, C{0.30858516816491438093, -0.91524462839801275078}, C{-0.27437433998977865042, 0.35516115403663398825}, C{0.0, 0.0}};
inline const std::vector<C> kmatrix_M3_C{C{0.63076923076923076903, -0.35384615384615382126}, C{-0.30398819674935437673, -0.0032095239897189255043}, C{0.053144945746104532618, -0.006154126869327271583}};
inline const std::vector<C> kmatrix_M3_D{C{0.0, 0.0}, C{0.064598817249227247581, 0.039527097035394138833}, C{-0.015111920443120161423, -0.013996176419270176688}, C{0.0, 0.0}};
inline const std::vector<C> kmatrix_M3_E{C{0.0, 0.0}, C{-0.5586719690446352218, 2.4019941721948608096}, C{0.27747015617475978072, -0.61064683322533772156}, C{0.0, 0.0}};

// rational limit, M = 3, g = 0.5, alpha = i, x- = 0.8+0.5i, x+ the larger rational root,
// gamma = gamma_bar = sqrt(i (x- - x+))
inline const C rational_x_plus = C{1.6572858211247960557, 6.0910610845856158493};
inline const C rational_u = C{1.698876404494382045, 2.9382022471910112808};
inline const std::vector<C> rational_A{C{1.0, 6.1068960700847421427e-54}, C{-1.558585150261537709, -0.64608481988829093223}, C{0.95007231503568516766, 0.26918288380154763766}, C{-0.10970188539297107751, 0.10149177823089066694}};
inline const std::vector<C> rational_B{C{0.0, 0.0}, C{1.7342038579687452443, -0.54762765978309074249}, C{-3.0519567086811856139, 0.58376194157866437158}, C{0.0, 0.0}};
inline const std::vector<C> rational_C{C{1.0, 0.0}, C{-1.5835489927436951252, -0.5114933779875171134}, C{1.0, 0.0}};
inline const std::vector<C> rational_D{C{0.0, 0.0}, C{1.7223538325330831986, -0.14200039768419999229}, C{-1.7223538325330831986, 0.14200039768419999229}, C{0.0, 0.0}};
inline const std::vector<C> rational_E{C{0.0, 0.0}, C{-0.86117691626654159931, 0.071000198842099996146}, C{0.86117691626654159931, -0.071000198842099996146}, C{0.0, 0.0}};

}  // namespace oracle
