// Generated by tools/oracles.py; do not edit by hand.
#pragma once

#include <cstdint>
#include <vector>

#include "dst/matrix.hpp"

namespace oracle {

inline const dst::Matrix kA{
    {{1, 2}, {-0.5, 0}, {0, 0.29999999999999999}},
    {{0.20000000000000001, 0}, {2, -1}, {1, 0}},
    {{-1, 0}, {0.5, 0.5}, {0.69999999999999996, 0}}};
inline const std::vector<double> kSigma{2.6804245066750854, 2.3942507516486238, 0.67296939175985271};
inline const dst::Matrix kPolarU{
    {{0.37870801761645034, 0.80906842343059826}, {-0.26740181263348617, -0.032015529238984423}, {0.22553384272396654, 0.28034672438710384}},
    {{0.11839979549048177, -0.0038136949631065696}, {0.75321598838627069, -0.48343152277704926}, {0.37276671135407391, 0.21440979616044917}},
    {{-0.43054118428190896, 0.050889649205076326}, {-0.042223183031630494, 0.35305540206504088}, {0.80103914024666389, -0.20964234763322731}}};
inline const dst::Matrix kPolarT{
    {{2.4510660078576509, 0}, {-0.13856649040257055, 0.053046389407537503}, {0.059741493522325169, 0.081803345804487934}},
    {{-0.13856649040257063, -0.053046389407537524}, {2.2789805153830391, 5.9413751614246869e-18}, {0.71405510149243367, 0.15607219754147469}},
    {{0.059741493522325127, -0.081803345804487934}, {0.71405510149243367, -0.15607219754147472}, {1.0175981268428695, -1.9623860584150348e-18}}};
inline const dst::Matrix kUExpMinusT{
    {{0.019030706479129675, 0.067973202653729622}, {-0.077697446541263954, -0.026600177117932725}, {0.14403959418145573, 0.11266940809213}},
    {{0.01454067653154502, -0.0071037182520214803}, {0.047305053144859791, -0.093559331509917881}, {0.019869474285312338, 0.14123435352538047}},
    {{-0.053200222268787158, 0.028491046045065974}, {-0.1357519201118437, 0.11727512252017552}, {0.37565982348326538, -0.14003210752991957}}};
inline constexpr double kBaireLambda = 10;
inline const dst::Matrix kBaireAlambda{
    {{0.79684212908344954, 1.6035512988233154}, {-0.39656254310325612, -0.00023589806736106726}, {0.033283298966988985, 0.26331310115103457}},
    {{0.17770777641622526, 0.0028426290092632171}, {1.5843641622513143, -0.80671898291897182}, {0.79258529771339303, 0.028505277784776826}},
    {{-0.80371398530501459, 0.010435566458268817}, {0.36232584335419488, 0.42023755246009276}, {0.62225318446202704, -0.026457554420971599}}};
inline const std::vector<std::uint64_t> kRngSeed42{0xca685846b557f0fcULL, 0x0d5ec61fa641d02eULL, 0x45d46229cc936c2bULL, 0x53504dfd2059b835ULL};
inline const std::vector<double> kRngSeed0Stream7Uniform{0.55976363605834434, 0.75533312600875335, 0.44561835111707104};
inline const dst::Matrix kKuelbsGramP3Dim3Extra2Seed7{
    {{0.52814746300270943, 1.5034847453004169e-19}, {-0.0012677095562173444, 0.0018986668732161706}, {-0.0030802379799839798, -0.0083264466658116189}},
    {{-0.0012677095562173444, -0.0018986668732161706}, {0.28349637853207926, -1.8656472508763301e-19}, {-0.020947055376780842, 0.016295591857727658}},
    {{-0.0030802379799839798, 0.0083264466658116189}, {-0.020947055376780842, -0.016295591857727658}, {0.16043970294992885, 1.628507762623305e-19}}};
inline const dst::Matrix kLpMatrix{
    {{1, 0}, {2, 0}},
    {{-0.5, 0}, {1, 0}}};
inline constexpr double kLpMatrixNormP3 = 2.4587139758247751;

}  // namespace oracle
