#pragma once

// Generated by tests/oracles/generate.py (mpmath, exact q-series). Do not edit.

#include <complex>
#include <cstdint>

namespace oracle {

struct C {
  double re, im;
  std::complex<double> z() const { return {re, im}; }
};

// tau(n), n = 0..100
constexpr std::int64_t kTau[101] = {0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944, -577738, 401856, 1217160, 987136, -6905934, 2727432, 10661420, -7109760, -4219488, -12830688, 18643272, 21288960, -25499225, 13865712, -73279080, 24647168, 128406630, -29211840, -52843168, -196706304, 134722224, 165742416, -80873520, 167282496, -182213314, -255874080, -145589976, 408038400, 308120442, 101267712, -17125708, -786948864, -548895690, -447438528, 2687348496, 248758272, -1696965207, 611981400, -1740295368, 850430336, -1596055698, 1758697920, 2582175960, -1414533120, 2686677840, -3081759120, -5189203740, -1791659520, 6956478662, 1268236032, 1902838392, 2699296768, -2790474540, -3233333376, -15481826884, 10165534848, 4698104544, 1940964480, 9791485272, -9600560640, 1463791322, 4373119536, -6425804700, -15693610240, -8951543328, 3494159424, 38116845680, 4767866880, 1665188361, -7394890608, -29335099668, 6211086336, -33355661220, 411016992, 32358470760, 45164021760, -24992917110, 13173496560, 9673645072, -27442896384, -13316478336, -64496363904, 51494658600, -49569988608, 75013568546, 40727164968, -60754911516, 37534859200};

// a(n), n = 0..30, for weights 16, 18, 20, 22, 26
constexpr int kOtherWeights[5] = {16, 18, 20, 22, 26};
constexpr const char* kOtherCoeffs[5][31] = {
    {"0", "1", "216", "-3348", "13888", "52110", "-723168", "2822456", "-4078080", "-3139803", "11255760", "20586852", "-46497024", "-190073338", "609650496", "-174464280", "-1335947264", "1646527986", "-678197448", "1563257180", "723703680", "-9449582688", "4446760032", "9451116072", "13653411840", "-27802126025", "-41055841008", "58552201080", "39198268928", "-36902568330", "-37684284480"},
    {"0", "1", "-528", "-4284", "147712", "-1025850", "2261952", "3225992", "-8785920", "-110787507", "541648800", "-753618228", "-632798208", "2541064526", "-1703323776", "4394741400", "-14721941504", "-5429742318", "58495803696", "1487499860", "-151530355200", "-13820149728", "397910424384", "-317091823464", "37638881280", "289428769375", "-1341682069728", "1027850138280", "476517730304", "2433410602590", "-2320423459200"},
    {"0", "1", "456", "50652", "-316352", "-2377410", "23097312", "-16917544", "-383331840", "1403363637", "-1084098960", "-16212108", "-16023861504", "50421615062", "-7714400064", "-120420571320", "-8939761664", "225070099506", "639933818472", "-1710278572660", "752098408320", "-856907438688", "-7392721248", "14036534788872", "-19416524359680", "-13421408020025", "22992256468272", "12212307114840", "5351898879488", "1137835269510", "-54911780521920"},
    {"0", "1", "-288", "-128844", "-2014208", "21640950", "37107072", "-768078808", "1184071680", "6140423133", "-6232593600", "-94724929188", "259518615552", "-80621789794", "221206696704", "-2788306561800", "3883087691776", "3052282930002", "-1768441862304", "-7920788351740", "-43589374617600", "98962345937952", "27280779606144", "-73845437470344", "-152560531537920", "-8506441300625", "23219075460672", "556597069939080", "1547070479704064", "-4253031736469010", "803032289798400"},
    {"0", "1", "-48", "-195804", "-33552128", "-741989850", "9398592", "39080597192", "3221114880", "-808949403027", "35615512800", "8419515299052", "6569640870912", "-81651045335314", "-1875868665216", "145284580589400", "1125667983917056", "-2519900028948078", "38829571345296", "-6082056370308940", "24895338421900800", "-7652137252582368", "-404136734354496", "-94995280296320424", "-630707177963520", "252525713626069375", "3919250176095072", "324298027793675880", "-1311237199302424576", "-271246959476737410", "-6973659868291200"}};

struct GammaCase {
  C z, log_gamma, digamma, trigamma, tetragamma;
};
constexpr GammaCase kGamma[] = {
    {{0.5, 10.0}, {-14.789024734744293, 13.03002003491109}, {2.302167693274347, 1.5707963267948966}, {1.0181286631530379e-26, -0.10008362734040317}, {-4.019410853892179e-25, 0.0020100888224794233}},
    {{6.0, 100.0}, {-130.8295105674371, 369.005639971708}, {4.606676273820102, 1.5158512290995847}, {0.0005483548806810488, -0.009969923065272134}, {-3.267204560608903e-07, 1.964068510140674e-06}},
    {{-3.5, 2.0}, {-6.420091394575658, -9.711907658196488}, {1.4991208125819593, 2.6795724806145294}, {-0.1996851923839549, -0.09909532349091954}, {-0.009791683187728054, -0.02158883058511174}},
    {{0.25, -40.0}, {-62.835129518830186, -107.1627395018991}, {3.6888729435192356, -1.577046570983228}, {-0.00015626831651132078, 0.025000325538637454}, {5.861665384773962e-07, -3.1252441740113027e-05}},
    {{12.5, 1000.0}, {-1486.984037426275, 5926.532878292246}, {6.907827232149956, 1.5587969017454228}, {1.1998275247358357e-05, -0.0009998561039944029}, {-7.196551038798939e-11, 1.998273619755146e-09}},
    {{0.1, 0.2}, {1.4196225566088014, -1.1894584561916535}, {-2.3875341022553846, 4.280821665691046}, {-10.652539572039585, -16.352436789583145}, {-668.7272859178414, 2301.3342435029836}},
};

struct IncGammaCase {
  C a, z, q;
};
constexpr IncGammaCase kIncGamma[] = {
    {{5.5, 0.0}, {3.0, 0.0}, {0.8733642532273845, 0.0}},
    {{6.0, 10.0}, {20.0, 0.0}, {-0.031248028578863007, -0.036989269580846466}},
    {{6.0, 10.0}, {10.806046117362794, 16.82941969615793}, {-0.013350426818573137, -0.03664305788434805}},
    {{17.0, 100.0}, {1.0367255756846319, 18.821024374882953}, {1.0000000000009506, -1.602705017325007e-12}},
    {{0.5, -30.0}, {2.0, 0.0}, {6.371894885442725e+17, -3.847938928674151e+17}},
    {{3.0, 1.0}, {40.0, 5.0}, {-1.5599101653768086e-15, -3.5679403134787276e-15}},
};

struct ChiCase {
  int weight;
  C s, value;
};
constexpr ChiCase kChi[] = {
    {12, {0.5, 10.0}, {-0.852887453878643, 0.5220948103710721}},
    {12, {0.3, 25.0}, {-1.4743137126357517, 0.9500055524373385}},
    {16, {0.9, -60.0}, {-0.13356826742245362, -0.09417418608151021}},
    {26, {0.2, 150.0}, {-3.08891788503033, -5.972857497243055}},
};

// chi^(r)/chi at 1/2 + 40i, weight 12, r = 0..3
constexpr C kChiRatio[4] = {{1.0, 0.0}, {-3.7206852988542236, -5.001365151621774e-41}, {13.843499093109944, 0.049074550848657736}, {-51.5084849990792, -0.5477728796714247}};

struct GammaJCase {
  int weight, j, r;
  C s;
  double rho;
  C value;
};
constexpr GammaJCase kGammaJ[] = {
    {12, 0, 0, {0.5, 50.0}, 0.02, {1.0, 0.0}},
    {12, 0, 1, {0.5, 50.0}, 0.02, {-4.160287108859353, 6.852128929271986e-41}},
    {12, 0, 2, {0.5, 50.0}, 0.02, {17.307988828141315, -0.03952302593607638}},
    {12, 1, 0, {0.5, 50.0}, 0.02, {0.009900990099009901, -0.09900990099009901}},
    {12, 1, 1, {0.5, 50.0}, 0.02, {-0.0447217280808277, 0.45107460660394805}},
    {12, 1, 2, {0.5, 50.0}, 0.02, {0.19914530666547478, -2.039742731182278}},
    {12, 2, 0, {0.5, 50.0}, 0.02, {-0.0021328841946197797, -0.01046766043853988}},
    {12, 2, 1, {0.5, 50.0}, 0.02, {0.01158556529276802, 0.04402446950673791}},
    {12, 2, 2, {0.5, 50.0}, 0.02, {-0.061405587389053246, -0.18540536549139913}},
    {12, 3, 0, {0.5, 50.0}, 0.02, {-0.0007241362765668625, -9.523554928994589e-05}},
    {12, 3, 1, {0.5, 50.0}, 0.02, {0.003411181832198769, 0.0004114442567212954}},
    {12, 3, 2, {0.5, 50.0}, 0.02, {-0.01586587420242086, -0.001708775271914504}},
    {12, 0, 0, {0.3, -200.0}, 0.005, {1.0, 0.0}},
    {12, 0, 1, {0.3, -200.0}, 0.005, {-6.9216354835824845, 0.001998492127140695}},
    {12, 0, 2, {0.3, -200.0}, 0.005, {47.90902379622418, -0.017673214042599333}},
    {12, 1, 0, {0.3, -200.0}, 0.005, {0.000575668414992964, 0.02398618395804017}},
    {12, 1, 1, {0.3, -200.0}, 0.005, {-0.0042372806182469774, -0.17600987814223848}},
    {12, 1, 2, {0.3, -200.0}, 0.005, {0.03102800359900436, 1.2873994958209987}},
    {12, 2, 0, {0.3, -200.0}, 0.005, {-0.0001202833015352329, 0.00250631506163412}},
    {12, 2, 1, {0.3, -200.0}, 0.005, {0.0009922480339311594, -0.017354759932311604}},
    {12, 2, 2, {0.3, -200.0}, 0.005, {-0.008097983179004788, 0.12017611215525587}},
    {12, 3, 0, {0.3, -200.0}, 0.005, {-4.329905308978567e-05, 1.4052563661982955e-06}},
    {12, 3, 1, {0.3, -200.0}, 0.005, {0.00032468647997011045, -1.008768019681931e-05}},
    {12, 3, 2, {0.3, -200.0}, 0.005, {-0.0024203608942835147, 7.146580932874732e-05}},
    {18, 0, 0, {0.7, 100.0}, 0.3, {1.0, 0.0}},
    {18, 0, 1, {0.7, 100.0}, 0.3, {-5.54178102330613, 0.003971334113372544}},
    {18, 0, 2, {0.7, 100.0}, 0.3, {30.711360282897648, -0.06387314755555991}},
    {18, 1, 0, {0.7, 100.0}, 0.3, {0.9668893029933394, -0.002715077154546165}},
    {18, 1, 1, {0.7, 100.0}, 0.3, {-5.358329975970375, 0.01954382099742552}},
    {18, 1, 2, {0.7, 100.0}, 0.3, {29.69490262317825, -0.15242964602603007}},
    {18, 2, 0, {0.7, 100.0}, 0.3, {0.4674350606432081, -0.0026305313178465206}},
    {18, 2, 1, {0.7, 100.0}, 0.3, {-2.5904610830572143, 0.017070088488015403}},
    {18, 2, 2, {0.7, 100.0}, 0.3, {14.35595262062837, -0.11769104329249021}},
    {18, 3, 0, {0.7, 100.0}, 0.3, {0.15065109307963295, -0.0012743030682404583}},
    {18, 3, 1, {0.7, 100.0}, 0.3, {-0.834893178892907, 0.007967662105721847}},
    {18, 3, 2, {0.7, 100.0}, 0.3, {4.626878370978182, -0.05216556072693762}},
};

// phi^(j)(rho) of the standard bump, rho in {0.7, 1.0, 1.6}, j = 0..4
constexpr double kBumpRho[3] = {0.7, 1.0, 1.6};
constexpr double kBumpDeriv[3][5] = {{0.9856672151943596, -0.361543284432917, -5.4683060583036776, -7.298335608983392, 1002.4322842463547}, {0.7310585786300049, -0.9830596662074093, 0.4811233735570357, 3.441407385217473, -89.48681328294502}, {0.16925603265336728, -0.995007987848239, 0.474885316470285, 17.416279234678083, 190.50843426677733}};
// L1 norms of phi^(j), j = 0..5
constexpr double kBumpNorm[6] = {1.25, 1.0, 2.231393148924833, 24.214333306365955, 411.8483709459866, 11012.771849084937};
struct KPhiCase {
  C w, value;
};
constexpr KPhiCase kKPhi[] = {{{1.0, 1.0}, {1.1728025509564735, 0.30775335050076463}}, {{0.5, 3.0}, {0.6180082542982374, 0.5350203786581069}}, {{2.0, -1.0}, {1.5402715383353742, -0.49758107375475913}}, {{0.1, 0.1}, {1.018978235288928, 0.020054653983338454}}};

struct LCase {
  int weight, m;
  C s, value;
};
constexpr LCase kL[] = {
    {12, 0, {0.5, 10.0}, {0.22874997077903386, 0.8118218042242819}},
    {12, 0, {0.5, 50.0}, {1.976360287812661, 1.979713707745349}},
    {12, 0, {0.25, 120.0}, {-1.492405630335749, -3.966427750930571}},
    {12, 0, {2.0, 7.0}, {1.0313731521994098, -0.1849088234210039}},
    {12, 0, {1.0, 100.0}, {0.3936925168507104, 0.053063297734734165}},
    {12, 1, {0.5, 30.0}, {-4.251255353453571, -0.5171002754100577}},
    {12, 2, {0.75, 20.0}, {-2.7850503892273006, 1.0679899063350524}},
    {16, 0, {0.5, 20.0}, {1.6273522829706155, -2.5261982255738946}},
    {26, 0, {0.5, 40.0}, {0.8911339205485146, 0.07395186623484795}},
};

}  // namespace oracle
