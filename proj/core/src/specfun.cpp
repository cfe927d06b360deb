#include "leakyloop/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

// K0 and I0 are evaluated from the classical FNLIB/SLATEC Chebyshev
// expansions (Fullerton, LANL): a power-series fit on the small-argument
// range and exponentially scaled asymptotic fits with correction series
// beyond it. The unit tests cross-validate every branch against an
// independent quadrature of the integral representation of K0.

namespace leakyloop::specfun {
namespace {

constexpr double kBk0[] = {
    -0.0353273932339027687201140060063153,
    0.344289899924628486886344927529213,
    0.0359799365153615016265721303687231,
    0.00126461541144692592338479508673447,
    2.28621210311945178608269830297585e-5,
    2.53479107902614945730790013428354e-7,
    1.90451637722020885897214059381366e-9,
    1.03496952576336245851008317853089e-11,
    4.25981614279108257652445327170133e-14,
    1.3744654358807508969423832544e-16,
    3.57089652850837359099688597333333e-19,
    7.63164366011643737667498666666666e-22,
    1.36542498844078185908053333333333e-24,
    2.07527526690666808319999999999999e-27,
    2.7128142180729856e-30,
    3.08259388791466666666666666666666e-33,
};

constexpr double kAk0[] = {
    -0.07643947903327941424082978270088,
    -0.02235652605699819052023095550791,
    7.734181154693858235300618174047e-4,
    -4.281006688886099464452146435416e-5,
    3.08170017386297474365001482666e-6,
    -2.639367222009664974067448892723e-7,
    2.563713036403469206294088265742e-8,
    -2.742705549900201263857211915244e-9,
    3.169429658097499592080832873403e-10,
    -3.902353286962184141601065717962e-11,
    5.068040698188575402050092127286e-12,
    -6.889574741007870679541713557984e-13,
    9.744978497825917691388201336831e-14,
    -1.427332841884548505389855340122e-14,
    2.156412571021463039558062976527e-15,
    -3.34965425514956277218878205853e-16,
    5.335260216952911692145280392601e-17,
    -8.693669980890753807639622378837e-18,
    1.446404347862212227887763442346e-18,
    -2.452889825500129682404678751573e-19,
    4.2337545262321715728217063424e-20,
    -7.427946526454464195695341294933e-21,
    1.3231505293926668662779674624e-21,
    -2.390587164739649451335981465599e-22,
    4.376827585923226140165712554666e-23,
    -8.113700607345118059339011413333e-24,
    1.521819913832172958310378154666e-24,
    -2.886041941483397770235958613333e-25,
    5.530620667054717979992610133333e-26,
    -1.070377329249898728591633066666e-26,
    2.091086893142384300296328533333e-27,
    -4.121713723646203827410261333333e-28,
    8.19348397112130764013568e-29,
    -1.642000275459297726780757333333e-29,
    3.316143281480227195890346666666e-30,
    -6.746863644145295941085866666666e-31,
    1.382429146318424677635413333333e-31,
    -2.851874167359832570811733333333e-32,
};

constexpr double kAk02[] = {
    -0.01201869826307592239839346212452,
    -0.009174852691025695310652561075713,
    1.444550931775005821048843878057e-4,
    -4.013614175435709728671021077879e-6,
    1.567831810852310672590348990333e-7,
    -7.77011043852173771031579975446e-9,
    4.611182576179717882533130529586e-10,
    -3.158592997860565770526665803309e-11,
    2.435018039365041127835887814329e-12,
    -2.074331387398347897709853373506e-13,
    1.925787280589917084742736504693e-14,
    -1.927554805838956103600347182218e-15,
    2.062198029197818278285237869644e-16,
    -2.341685117579242402603640195071e-17,
    2.805902810643042246815178828458e-18,
    -3.530507631161807945815482463573e-19,
    4.645295422935108267424216337066e-20,
    -6.368625941344266473922053461333e-21,
    9.0695213109865155676223488e-22,
    -1.337974785423690739845005311999e-22,
    2.03983602185995231552208896e-23,
    -3.207027481367840500060869973333e-24,
    5.189744413662309963626359466666e-25,
    -8.629501497540572192964607999999e-26,
    1.4721611831025598552080384e-26,
    -2.573069023867011283812351999999e-27,
    4.60177408664351658737664e-28,
    -8.411555324201093737130666666666e-29,
    1.569806306635368939301546666666e-29,
    -2.988226453005757788979199999999e-30,
    5.796831375216836520618666666666e-31,
    -1.145035994347681332155733333333e-31,
    2.301266594249682802005333333333e-32,
};

constexpr double kBi0[] = {
    -0.07660547252839144951081894976243285,
    1.927337953993808269952408750881196,
    0.2282644586920301338937029292330415,
    0.01304891466707290428079334210691888,
    4.344270900816487451378682681026107e-4,
    9.422657686001934663923171744118766e-6,
    1.434006289510691079962091878179957e-7,
    1.613849069661749069915419719994611e-9,
    1.396650044535669699495092708142522e-11,
    9.579451725505445344627523171893333e-14,
    5.333981859862502131015107744e-16,
    2.458716088437470774696785919999999e-18,
    9.535680890248770026944341333333333e-21,
    3.154382039721427336789333333333333e-23,
    9.004564101094637431466666666666666e-26,
    2.240647369123670016e-28,
    4.903034603242837333333333333333333e-31,
    9.508172606122666666666666666666666e-34,
};

constexpr double kAi0[] = {
    0.07575994494023795942729872037438,
    0.007591380810823345507292978733204,
    4.153131338923750501863197491382e-4,
    1.07007646343907307358242970217e-5,
    -7.90117997921289466075031948573e-6,
    -7.826143501438752269788989806909e-7,
    2.783849942948870806381185389857e-7,
    8.252472600612027191966829133198e-9,
    -1.204463945520199179054960891103e-8,
    1.559648598506076443612287527928e-9,
    2.292556367103316543477254802857e-10,
    -1.191622884279064603677774234478e-10,
    1.757854916032409830218331247743e-11,
    1.128224463218900517144411356824e-12,
    -1.146848625927298877729633876982e-12,
    2.715592054803662872643651921606e-13,
    -2.415874666562687838442475720281e-14,
    -6.084469888255125064606099639224e-15,
    3.145705077175477293708360267303e-15,
    -7.172212924871187717962175059176e-16,
    7.874493403454103396083909603327e-17,
    1.004802753009462402345244571839e-17,
    -7.56689536535053485342843588881e-18,
    2.150380106876119887812051287845e-18,
    -3.754858341830874429151584452608e-19,
    2.354065842226992576900757105322e-20,
    1.11466761204792853022637335511e-20,
    -5.398891884396990378696779322709e-21,
    1.439598792240752677042858404522e-21,
    -2.591916360111093406460818401962e-22,
    2.23813318399858390743409229824e-23,
    5.250672575364771172772216831999e-24,
    -3.249904138533230784173432285866e-24,
    9.9242141032050379278572847104e-25,
    -2.164992254244669523146554299733e-25,
    3.233609471943594083973332991999e-26,
    -1.184620207396742489824733866666e-27,
    -1.281671853950498650548338687999e-27,
    5.827015182279390511605568853333e-28,
    -1.668222326026109719364501503999e-28,
    3.6253095105415699757006848e-29,
    -5.733627999055713589945958399999e-30,
    3.736796722063098229642581333333e-31,
    1.602073983156851963365512533333e-31,
    -8.700424864057229884522495999999e-32,
    2.741320937937481145603413333333e-32,
};

constexpr double kAi02[] = {
    0.0544904110141088316078960962268,
    0.003369116478255694089897856629799,
    6.889758346916823984262639143011e-5,
    2.891370520834756482966924023232e-6,
    2.048918589469063741827605340931e-7,
    2.266668990498178064593277431361e-8,
    3.396232025708386345150843969523e-9,
    4.940602388224969589104824497835e-10,
    1.188914710784643834240845251963e-11,
    -3.149916527963241364538648629619e-11,
    -1.321581184044771311875407399267e-11,
    -1.794178531506806117779435740269e-12,
    7.180124451383666233671064293469e-13,
    3.852778382742142701140898017776e-13,
    1.540086217521409826913258233397e-14,
    -4.150569347287222086626899720156e-14,
    -9.554846698828307648702144943125e-15,
    3.811680669352622420746055355118e-15,
    1.772560133056526383604932666758e-15,
    -3.425485619677219134619247903282e-16,
    -2.827623980516583484942055937594e-16,
    3.461222867697461093097062508134e-17,
    4.465621420296759999010420542843e-17,
    -4.830504485944182071255254037954e-18,
    -7.233180487874753954562272409245e-18,
    9.92147541217369859888046093981e-19,
    1.193650890845982085504399499242e-18,
    -2.488709837150807235720544916602e-19,
    -1.938426454160905928984697811326e-19,
    6.444656697373443868783019493949e-20,
    2.886051596289224326481713830734e-20,
    -1.601954907174971807061671562007e-20,
    -3.270815010592314720891935674859e-21,
    3.686932283826409181146007239393e-21,
    1.268297648030950153013595297109e-23,
    -7.549825019377273907696366644101e-22,
    1.502133571377835349637127890534e-22,
    1.265195883509648534932087992483e-22,
    -6.100998370083680708629408916002e-23,
    -1.268809629260128264368720959242e-23,
    1.661016099890741457840384874905e-23,
    -1.585194335765885579379705048814e-24,
    -3.302645405968217800953817667556e-24,
    1.313580902839239781740396231174e-24,
    3.689040246671156793314256372804e-25,
    -4.210141910461689149219782472499e-25,
    4.79195459108286578063171401373e-26,
    8.459470390221821795299717074124e-26,
    -4.03980094087283249314607937181e-26,
    -6.434714653650431347301008504695e-27,
    1.225743398875665990344647369905e-26,
    -2.934391316025708923198798211754e-27,
    -1.961311309194982926203712057289e-27,
    1.503520374822193424162299003098e-27,
    -9.588720515744826552033863882069e-29,
    -3.483339380817045486394411085114e-28,
    1.690903610263043673062449607256e-28,
    1.982866538735603043894001157188e-29,
    -5.317498081491816214575830025284e-29,
    1.803306629888392946235014503901e-29,
    6.213093341454893175884053112422e-30,
    -7.69218929277216186320072806673e-30,
    1.858252826111702542625560165963e-30,
    1.237585142281395724899271545541e-30,
    -1.102259120409223803217794787792e-30,
    1.886287118039704490077874479431e-31,
    2.16019687224365891314903141406e-31,
    -1.605454124919743200584465949655e-31,
    1.965352984594290603938848073318e-32,
};


double chebyshev(double x, const double* cs, int n) {
    double b0 = 0.0, b1 = 0.0, b2 = 0.0;
    const double twox = 2.0 * x;
    for (int i = n - 1; i >= 0; --i) {
        b2 = b1;
        b1 = b0;
        b0 = twox * b1 - b2 + cs[i];
    }
    return 0.5 * (b0 - b2);
}

template <std::size_t N>
double chebyshev(double x, const double (&cs)[N]) {
    return chebyshev(x, cs, static_cast<int>(N));
}

// exp(x) * K0(x) for x > 2.
double k0e_large(double x) {
    if (x <= 8.0)
        return (chebyshev((16.0 / x - 5.0) / 3.0, kAk0) + 1.25) / std::sqrt(x);
    return (chebyshev(16.0 / x - 1.0, kAk02) + 1.25) / std::sqrt(x);
}

// exp(-x) * I0(x) for x > 3.
double i0e_large(double x) {
    if (x <= 8.0)
        return (chebyshev((48.0 / x - 11.0) / 5.0, kAi0) + 0.375) / std::sqrt(x);
    return (chebyshev(16.0 / x - 1.0, kAi02) + 0.375) / std::sqrt(x);
}

double i0_small(double x) {
    // valid for |x| <= 3
    return 2.75 + chebyshev(x * x / 4.5 - 1.0, kBi0);
}

double k0_small(double x) {
    // valid for 0 < x <= 2
    const double y = x * x;
    return -std::log(0.5 * x) * i0_small(x) - 0.25 + chebyshev(0.5 * y - 1.0, kBk0);
}

} // namespace

double bessel_k0(double x) {
    if (!(x > 0.0))
        throw std::domain_error("bessel_k0: argument must be positive");
    if (x <= 2.0) return k0_small(x);
    // Underflow cutoff: exp(-x)/sqrt(x) below the smallest normal double.
    if (x > 750.0) return 0.0;
    return std::exp(-x) * k0e_large(x);
}

double bessel_k0_scaled(double x) {
    if (!(x > 0.0))
        throw std::domain_error("bessel_k0_scaled: argument must be positive");
    if (x <= 2.0) return std::exp(x) * k0_small(x);
    return k0e_large(x);
}

double bessel_i0(double x) {
    x = std::abs(x);
    if (x <= 3.0) return i0_small(x);
    return std::exp(x) * i0e_large(x);
}

double bessel_i0_scaled(double x) {
    x = std::abs(x);
    if (x <= 3.0) return std::exp(-x) * i0_small(x);
    return i0e_large(x);
}

double free_kernel(double kappa, double d) {
    if (!(kappa > 0.0))
        throw std::domain_error("free_kernel: kappa must be positive");
    if (!(d > 0.0))
        throw std::domain_error("free_kernel: distance must be positive");
    constexpr double inv_two_pi = 0.15915494309189533576888376337251;
    return inv_two_pi * bessel_k0(kappa * d);
}

} // namespace leakyloop::specfun
