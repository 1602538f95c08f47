// Generated by tests/oracle/gen_normaltest_reference.py. Do not edit.
#pragma once

#include <array>
#include <vector>

namespace radval::testdata {

struct NormaltestCase {
    const char* name;
    std::vector<double> samples;
    double statistic;
    double pvalue;
};

inline std::vector<NormaltestCase> normaltest_cases() {
    return {
        {"normal_20", {-0.7901524999630146, -2.0346254818318728, 0.6033017469247647, 0.7442945298799118, -0.30968679986627135, 0.36732137294554024, 1.7103942914776449, 1.0607978400658138, 0.7076390208060754, 0.687749388505445, -0.8635674537523599, 0.9640167316735617, -1.6484628156748702, -0.3320918127686623, -0.4372938409341125, -1.7285187058460105, -0.11033888700145329, 1.6434550766344018, -0.3401273376251148, -1.2076033402593367}, 1.0126144462744466, 0.6027171743957043},
        {"uniform_20", {0.15999114500430367, 0.5859435148402273, 0.8238367771828463, 0.2972602367602962, 0.6848995215463021, 0.463884160305983, 0.8913574298723872, 0.5648732620297581, 0.9931919916088925, 0.24252156006490633, 0.10929626043933605, 0.34554992113891947, 0.7792144992475755, 0.5396525107745467, 0.9242554505951135, 0.994365591718783, 0.92224457779889, 0.16230957213304642, 0.5900711134431571, 0.7256430750639884}, 3.4598577062030915, 0.17729702365449837},
        {"exponential_20", {0.1631847050416112, 0.5370826753473008, 0.19818856589705328, 1.2308668636411713, 1.5426475637296955, 0.0861310986428756, 0.46148192437849206, 1.6706700171910862, 1.8707583318838834, 0.5012586827600926, 2.3775599035632458, 1.7194972595907536, 0.3020341330707126, 0.24347977329262088, 0.22602864434431513, 0.9687747298443936, 0.07362646364944375, 0.25128880005393284, 0.4015904882892314, 0.16326912754621636}, 3.736561270085026, 0.15438888458040223},
        {"normal_50", {1.9289571893320223, -0.6076825118909078, -2.0716992356741057, -0.8010096944383682, 1.726906654978512, 0.2824225524107063, -0.28163214093756717, 0.18800972915824063, 0.31042389189142267, 1.0016903424319834, 0.110101686674646, 1.3156882311001799, -0.5308623660459791, -0.052585492229453024, -0.5510063934916279, 0.06492880847459569, 2.0625735899770503, -1.6810778800629584, -1.5448134707487753, -0.6812694985552612, 1.1313167678092764, 0.2661050282846497, -0.8633854783019882, 0.0565501528406134, -1.4231869544156102, -1.218702735350207, -0.7720558623744435, 0.5176441997474639, -0.3149067090644009, 0.06816294250763563, 1.303884063415558, -0.4119211870803251, 1.3868748664034358, -0.9935963566029844, 2.2560505203638943, -1.4643795933435781, -2.149965767956606, 0.21498990394222925, -0.21066989465960903, 0.7889379436273386, 0.8630338602364716, -1.5180119682999633, -0.024972008944075582, 2.579801154009113, -0.36528262046028037, 1.7492341215440235, 0.10717230861714103, -0.34407467761342886, -1.1005979118881424, -0.6511260824554251}, 1.3129179791081758, 0.5186847546303158},
        {"lognormal_50", {2.9654601439257187, 0.6456923444736296, 0.5213279922041872, 0.7857264049868402, 0.5007964979401447, 2.471770656445412, 1.6954364920023188, 1.4660619589244301, 2.330126873288873, 0.6971168145261677, 0.4545362015058693, 1.2315119418747156, 1.2039058930997444, 0.5985092124007252, 1.3792070096517994, 2.418735835707531, 0.7261577305116133, 1.123904203978084, 1.2294242938609492, 1.3384218580504674, 1.8473326269696548, 1.4234575106220688, 2.3158940554746517, 0.6149856071946695, 0.7533165738250248, 1.6353059502596803, 0.7668544334545354, 0.7146825100926927, 0.9730746182177352, 1.235344556682331, 0.7418514559474154, 1.4274555620654674, 2.29916172272463, 0.34276953124137843, 0.2535868674035196, 1.5710930067286444, 0.620148386811686, 2.3960061033808238, 5.593760455620753, 0.9184632445901609, 0.794402911965869, 0.9958352936818715, 1.1840467417160716, 0.9731405524281634, 0.5814232662832806, 1.2821800404741661, 0.29775791340073354, 1.2661788158069025, 1.062150522715382, 2.1922861281305503}, 45.53863442212572, 1.2924423447701837e-10},
        {"student3_50", {-0.7111063127731407, 3.09922418542561, 1.6289614480977705, -0.14959544080338602, -1.7174166865556482, 0.830218600929637, 2.1576336319048437, 2.83047509661055, -0.304640266069036, -2.287688055458072, -0.8215946803657518, -1.1156168280328882, 0.6866949000526966, -0.36225143048585606, 1.1095562236157694, -0.4123496307044046, -0.16963416300551704, -0.08796423794732884, -0.8713136454705903, -0.06389580169315444, 1.3281751441952887, 1.1464477711377112, -1.902482786428075, 0.722474453307407, -1.9179895662521724, 4.547053795041003, -1.119227529512068, -1.4260689260887853, -4.200014918684146, 2.336444344455282, 0.12296405818420526, -0.9918167970395443, 0.22639397488046045, 0.19956307304282994, -2.315780198921888, 1.3837849917753666, -1.1505743022333859, 1.0782101204290095, 0.8434792663717887, 0.7031903615128201, -4.265583589864561, -1.8463679721632502, 0.6187371448940955, -2.746611980558299, 0.5700696927307555, 0.7910359474580029, -0.6488936885396125, 0.08518103727494261, -0.0931651459255019, 0.23737248929234678}, 1.948305526972199, 0.3775120601122667},
        {"normal_100", {0.40054869529452247, -1.6144394184092015, -1.8369309194239873, -1.0275660141125929, -0.07471999580256986, -1.7687402479997232, 0.520491992699744, -0.4783660442679389, -0.06744923471238704, -0.7768284323465566, -0.34638298095238024, -0.3117521708064117, -3.517257789499551, 0.8045117494710514, 0.0597593305361066, -0.6246053601433352, 1.6622199908804982, 0.33902209781899684, 0.9419960448921009, -0.7420343264343765, 0.6999135353336922, 0.04162555388217994, -0.5128740394317729, 0.44601395591012266, -0.0674660781121661, -2.0631825507638615, -0.08176314114736215, 0.08017014506188239, 1.1543918633301995, 1.1037623634862912, -1.4147401452750465, 0.4276585026488288, -2.3075208311774293, -0.6156972609436115, 0.7827312902817068, 0.05803047518647741, -1.768608960501126, 0.988867584811383, -0.12925659165207595, -0.19177113238363933, 0.44460358987266385, 0.9449534937304024, -0.18118220814130434, 0.5448329215217265, -0.7627824746756898, -0.05930266491425019, 0.10192309757013941, 0.28615296145226804, 0.23052295333083875, -0.8234194411808377, 1.1013791557718517, 0.47273298449281465, -1.1179823992841882, -1.035724677584593, 0.5451213186100015, -0.07593241760255434, 1.2078406717082306, 1.3464292731612388, -0.09135506609371148, -1.3561176957632874, 0.4428126802120964, 0.4652247596624467, 0.592229855934264, -0.9371687220852996, -0.33128139068142126, 1.1027534447974099, 0.9632607716415889, 1.614537375833209, -1.8674373979982946, -1.0708214048990174, -0.2687785390270473, -2.0615230776591877, -0.5381567459033897, -0.07913631895896833, -0.7175950018552761, -0.7784467942058092, -0.011233778792559865, 0.8323394736008531, 0.4842204262815202, -0.6679785637820098, 0.6555234690655144, -0.7273114708122885, -0.2053200889382524, -0.6914618736146958, 0.3477995022494555, 0.17318593572611854, -1.8455561454525986, -1.0743830407055903, -0.8416935711253584, -1.2712311305313595, 0.7783685983449657, 0.806603874930026, -0.09065089767463141, 1.7952469843444543, 0.15209022106427544, -0.3537859848730025, 1.7431952347652564, 0.324327342614514, 1.0734130734237475, -0.19747032423090624}, 6.595470678493624, 0.03696678991548043},
        {"uniform_100", {0.7597462934909764, 0.7059545544593435, 0.998269798282112, 0.5564056433782218, 0.19137031905955626, 0.24602591931037054, 0.7054789721651491, 0.7079227674576039, 0.8552153055076652, 0.9894794150031881, 0.1116553627734016, 0.9626196868364483, 0.31088493632287395, 0.13498173994931095, 0.46025503079366803, 0.31490278379454717, 0.2762636607908424, 0.6446269527501406, 0.9194617600737536, 0.6938290833859448, 0.45595532963858265, 0.6503254804469448, 0.36971312183575544, 0.2252463871273982, 0.5919519160900698, 0.6632452076011257, 0.740530524363764, 0.044068090833259244, 0.3974782621612307, 0.9397689345553412, 0.2539589912002086, 0.028767145191161192, 0.8923645741045879, 0.6980006523618395, 0.6544138302275894, 0.6672798228541205, 0.7628810568250229, 0.09407206046734007, 0.8741966822100637, 0.8797130053339985, 0.005544771136810067, 0.8905590034532792, 0.8895666635465327, 0.19956952216727375, 0.08983643024088905, 0.5312773509369556, 0.27299816725355996, 0.6445653009213315, 0.35449102966535306, 0.36130699534830624, 0.8106805769446398, 0.9616155108765544, 0.02082004347300237, 0.7088365796582045, 0.8174661426823516, 0.5784537327454473, 0.3631939980409504, 0.6669835770657182, 0.13387295295376878, 0.1988151567357842, 0.8702670480403103, 0.7588297417193262, 0.07716804929449073, 0.8325663518044811, 0.25738684389188404, 0.9963181944001581, 0.21910775680065553, 0.15619160191474746, 0.9431998486444463, 0.7585755186039647, 0.8242772278694179, 0.4736193210398604, 0.825718865402216, 0.7065458883858035, 0.776560710438393, 0.9735683048932078, 0.4161726001624795, 0.5780165182898824, 0.43717278483900335, 0.7830776964407592, 0.9958889086001237, 0.1873711868364364, 0.23165392634642956, 0.23672791537233184, 0.5443968724724978, 0.5013497904468798, 0.15863927290234214, 0.2191680084983011, 0.32551287916791005, 0.4201343846028509, 0.13074395895645186, 0.773066986463816, 0.23573151444443563, 0.43637762157147586, 0.42916634877748483, 0.40013198836156216, 0.028430704478043634, 0.1474848282259159, 0.42369948448904904, 0.6458659589619375}, 49.23123895092548, 2.039728166928594e-11},
        {"radii_like_100", {0.01539149421525914, 0.01732186812896964, 0.014753263585733797, 0.02141471601589777, 0.015937039373200266, 0.02974557203950238, 0.013708987905699053, 0.013940316465604109, 0.012096136437117265, 0.0224102926908015, 0.013013181943762487, 0.026401873949051337, 0.015279176095830127, 0.02445373635071556, 0.03153737168561915, 0.015323759091875786, 0.0013455550604412822, 0.02383997034076758, 0.023831136064986637, 0.01966590567790568, 0.020041615406609516, 0.02707844715398916, 0.010188204056226679, 0.019822822960583825, 0.030990932833775846, 0.016576440146884173, 0.019597831711270473, 0.01942339360386151, 0.02634395000402525, 0.010403401453278203, 0.01767116727737631, 0.025202072871226493, 0.027679870204430322, 0.013101186889557463, 0.022717915544708277, 0.01891226919561808, 0.022669808223801283, 0.029224612218134983, 0.010941060706717427, 0.01504100630699556, 0.018356160628671264, 0.007620667896478233, 0.009634753629693345, 0.01872239405129896, 0.02381034471579464, 0.021011629072071193, 0.01726507494876628, 0.020207924472231457, 0.023109986671615016, 0.022586101025523202, 0.011445350224424385, 0.010836125509417883, 0.02525894502557807, 0.009705645217993192, 0.025514475104576557, 0.02398372956066616, 0.015879174568094758, 0.020624289504739324, 0.023983579838560653, 0.017894323785401848, 0.015268449950523854, 0.02398143920213222, 0.023488738433585694, 0.026531141917888443, 0.013799320719312287, 0.02199030474551533, 0.019933651847331087, 0.025842856755633158, 0.01819692352751602, 0.013718212907905179, 0.021913634045904674, 0.009835880440057492, 0.013960219766598248, 0.018914337485591605, 0.02696911195942794, 0.011358455080815281, 0.017127264352834348, 0.017362922301257137, 0.008001012938132037, 0.022243771875305518, 0.016324212818911686, 0.018143719159756933, 0.02105319298757876, 0.012481543613029156, 0.012651480998377984, 0.028104504484274054, 0.0195828275611152, 0.026356527376139634, 0.02850115666205542, 0.022137931945712324, 0.014187747306309369, 0.030994329654799486, 0.018481036481874224, 0.016541492591469455, 0.02237269320631893, 0.025286640523906466, 0.023206998905615294, 0.017677430313532614, 0.025545119059881757, 0.015571038981735251}, 0.901776269651197, 0.6370621032553772},
        {"bimodal_100", {-2.5427566395719605, -2.161797656697622, -2.0348709869220993, -1.9871326461822036, -2.2245955026780733, -2.276177102243065, -1.8231901516293725, -2.039621391883803, -1.456036426950732, -1.8295375717531726, -2.0856715282583953, -1.9456892793286864, -1.4768947154827976, -1.6518349918426287, -2.5630747993567176, -2.11061534927842, -1.1775129050769189, -1.8684134622861157, -3.4212456491835486, -2.301175948338935, -1.6794767141857847, -1.1823626194712245, -1.5261029307766942, -2.7553554006835204, -2.111753383714655, -1.7758874624388037, -1.6048252857363823, -2.5170852715052057, -2.6488780146660824, -1.7133914815585736, -0.9649647571646163, -2.34369598258224, -1.8972933962793896, -2.205230411643453, -1.9414251233626507, -2.821324876756212, -2.590272220734917, -2.861528234569162, -1.9366666321708401, -0.981454294523386, -1.93861495631322, -2.053168265952536, -2.3108966499914123, -2.4145982216341046, -0.8425743990135302, -1.7191231082635832, -1.9238019010929812, -1.4248293689045586, -2.9670631007812425, -2.250194423653698, 2.2329731252373093, 2.724295276240288, 2.2730548826992965, 2.3786679397507546, 2.178666113058575, 1.5067479121331528, 1.7407906485886229, 1.5992894079256725, 1.845690559930418, 1.3652427976382104, 2.1688752718231576, 1.45811831608694, 1.9607000660794052, 2.0971757034488996, 2.928040512837422, 1.9765307698610741, 0.9727741066213302, 3.008492460266104, 2.5028793764259136, 2.07827792055012, 1.4482379396142195, 1.8140165041532765, 2.457282499029193, 3.1505637683237673, 2.6803548166745785, 2.90593795653842, 2.269402786976954, 1.7359111104059923, 1.3711497609674685, 2.6642579208199497, 1.1062807245026693, 2.1111866903053405, 3.0654389569490816, 2.685364133037748, 1.3955854155774836, 2.7930892211298146, 1.503503432831405, 1.1589919032016467, 1.8393810317958648, 1.8556803666678197, 3.235741116289061, 2.0429005217834098, 1.3900714271733823, 1.0783740081902908, 1.5051333239110765, 1.936676764924384, 1.3426829264668447, 1.5067299287857208, 1.3960114848260003, 2.2671040672942273}, 1508.0607985304252, 0.0},
    };
}

}  // namespace radval::testdata
