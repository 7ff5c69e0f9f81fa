// @generated by gen_oracles.py (mpmath, 60 digits). Do not edit.
#![allow(clippy::excessive_precision)]

/// (k, n, tau, P[Bin(n, tau) >= k])
pub const BINOM_UPPER_TAIL: &[(u64, u64, f64, f64)] = &[
    (93, 100, 0.597052, 4.5709180335768300376e-14),
    (19, 100, 0.282964, 9.8779213526591987141e-1),
    (70, 100, 0.379024, 7.8354429282484064179e-11),
    (2, 100, 0.381925, 9.9999999999999999992e-1),
    (50, 100, 0.258441, 2.0256505002534768483e-7),
    (15, 100, 0.861151, 1.0),
    (89, 100, 0.828033, 5.987662590014796399e-2),
    (87, 100, 0.723987, 3.8077719775730007486e-4),
    (52, 100, 0.591559, 9.3951256316179471412e-1),
    (41, 100, 0.077916, 6.8591718462768744922e-20),
    (6, 100, 0.052993, 4.3780060515461638258e-1),
    (51, 100, 0.792465, 9.9999999991402499711e-1),
    (65, 100, 0.239097, 3.7301060345216212406e-18),
    (93, 100, 0.609625, 2.5593961740375352381e-13),
    (73, 100, 0.647215, 4.9640900340160197675e-2),
    (31, 100, 0.922498, 1.0),
    (70, 100, 0.820262, 9.98895819692486993e-1),
    (33, 100, 0.722383, 9.9999999999999992508e-1),
    (45, 100, 0.383333, 1.0305768844392214634e-1),
    (68, 100, 0.800556, 9.9852263181866776341e-1),
    (26, 100, 0.185973, 4.214315071133226185e-2),
    (85, 100, 0.099381, 3.1697924293337911077e-69),
    (68, 100, 0.816556, 9.996750760051783276e-1),
    (89, 100, 0.786403, 5.3221286997285482596e-3),
    (57, 100, 0.516929, 1.6807119107106708399e-1),
    (91, 100, 0.648919, 1.5187785410644238619e-9),
    (80, 100, 0.447196, 5.1949701992838078052e-13),
    (72, 100, 0.103778, 3.5137440572430387015e-48),
    (87, 100, 0.592973, 1.3602519471723053896e-9),
    (84, 100, 0.106052, 3.1869282364954532014e-65),
    (92, 100, 0.919801, 5.8973212078611087569e-1),
    (41, 100, 0.747986, 9.9999999999980659903e-1),
    (100, 100, 0.68204, 2.404277391943866319e-17),
    (42, 100, 0.871068, 1.0),
    (65, 100, 0.803279, 9.9989604262330287021e-1),
    (46, 100, 0.263692, 1.9082055930995867127e-5),
    (55, 100, 0.385059, 6.0124679018505262029e-4),
    (89, 100, 0.791363, 7.337192862673240507e-3),
    (28, 100, 0.091021, 4.92889826335234391e-8),
    (9, 100, 0.874206, 1.0),
    (100, 100, 0.718751, 4.5482695329392190424e-15),
    (33, 100, 0.743938, 9.9999999999999999923e-1),
    (21, 100, 0.058884, 3.2091209161125733568e-7),
    (79, 100, 0.28875, 4.2885051977224949326e-25),
    (15, 100, 0.171561, 7.5474127483213217295e-1),
    (44, 100, 0.903889, 1.0),
    (51, 100, 0.445012, 1.1393199216585696335e-1),
    (28, 100, 0.120213, 1.2817156405558906133e-5),
    (53, 100, 0.19224, 5.1533079442960498378e-14),
    (52, 100, 0.602847, 9.6274193567613883676e-1),
    (22, 100, 0.217077, 5.1090583150764443164e-1),
    (71, 100, 0.10201, 2.3583198657282135196e-47),
    (100, 100, 0.859774, 2.7442948430432113984e-7),
    (96, 100, 0.685008, 7.1314653931820898709e-12),
    (80, 100, 0.773784, 3.1195347501701205802e-1),
    (9, 100, 0.674692, 1.0),
    (80, 100, 0.387716, 4.1904055575916441358e-17),
    (89, 100, 0.138041, 8.1432092987727134403e-64),
    (36, 100, 0.308943, 1.5934477958942742289e-1),
    (27, 100, 0.223858, 1.6150825592757674468e-1),
    (76, 100, 0.340569, 1.2159423099787667041e-17),
    (95, 100, 0.416463, 3.8295136723791936141e-30),
    (44, 100, 0.587402, 9.9892125386330597546e-1),
    (54, 100, 0.585974, 8.49571446869745585e-1),
    (76, 100, 0.763136, 5.836095235716948812e-1),
    (5, 100, 0.609813, 1.0),
    (55, 100, 0.422217, 6.7604300069412695731e-3),
    (38, 100, 0.624692, 9.9999978089769826442e-1),
    (29, 100, 0.318913, 7.6461903957281884856e-1),
    (20, 100, 0.683839, 1.0),
    (71, 100, 0.81347, 9.9589851140045646854e-1),
    (38, 100, 0.323517, 1.3602278130626475862e-1),
    (43, 100, 0.512896, 9.6077638300022571645e-1),
    (47, 100, 0.441987, 3.2055263380057974188e-1),
    (99, 100, 0.666764, 1.2723248313058575594e-16),
    (85, 100, 0.431274, 5.5224376048712067755e-18),
    (100, 100, 0.792632, 8.0753278128316955169e-11),
    (13, 100, 0.271712, 9.9980183779559111199e-1),
    (85, 100, 0.805584, 1.5946242123125765174e-1),
    (40, 100, 0.564338, 9.9966252516908794976e-1),
    (100, 100, 0.589805, 1.1771857357123693644e-23),
    (58, 100, 0.263595, 2.571602459313095071e-11),
    (100, 100, 0.893878, 1.3422235715254050103e-5),
    (92, 100, 0.611325, 2.4278673741388784452e-12),
    (100, 100, 0.783784, 2.6280847352872685451e-11),
    (56, 100, 0.820214, 9.9999999955488076078e-1),
    (7, 100, 0.216523, 9.9998283719314633031e-1),
    (35, 100, 0.884582, 1.0),
    (15, 100, 0.098665, 6.6226156884229228181e-2),
    (100, 100, 0.305881, 3.5912871654103985719e-52),
    (18, 100, 0.050957, 2.9239342908258121581e-6),
    (23, 100, 0.454293, 9.9999904370015720884e-1),
    (20, 100, 0.215141, 6.8153047645827411529e-1),
    (5, 100, 0.770352, 1.0),
    (70, 100, 0.774867, 9.6882574752497116349e-1),
    (0, 100, 0.904384, 1.0),
    (100, 100, 0.735728, 4.6960039527196715686e-14),
    (13, 100, 0.183985, 9.4139142698701910327e-1),
    (89, 100, 0.553355, 3.1481719948458754129e-13),
    (47, 100, 0.895196, 1.0),
    (416, 500, 0.68926, 2.3066155496382781852e-13),
    (71, 500, 0.386031, 1.0),
    (500, 500, 0.888628, 2.2908502798059814537e-26),
    (80, 500, 0.364722, 1.0),
    (394, 500, 0.602963, 8.9592790412064847716e-19),
    (480, 500, 0.484314, 3.5644759614156622044e-122),
    (258, 500, 0.33584, 9.1938572238153331884e-17),
    (496, 500, 0.663531, 1.4733615874598602673e-81),
    (201, 500, 0.2694, 9.2394518908921357674e-11),
    (449, 500, 0.707784, 6.3748168741289347582e-25),
    (220, 500, 0.287771, 3.4262283349888741436e-13),
    (239, 500, 0.304984, 4.3565813913813573201e-16),
    (296, 500, 0.530958, 3.4775380262044051987e-3),
    (403, 500, 0.573669, 3.0087700945368981896e-28),
    (443, 500, 0.878178, 3.2537176820227224645e-1),
    (358, 500, 0.548145, 9.5893148857920544702e-15),
    (257, 500, 0.599395, 9.9995360145668070305e-1),
    (61, 500, 0.631662, 1.0),
    (122, 500, 0.113972, 3.6009152651662118564e-16),
    (3, 500, 0.202306, 1.0),
    (375, 500, 0.672816, 1.0363531125150357145e-4),
    (479, 500, 0.664889, 8.915072426796251829e-59),
    (500, 500, 0.931776, 4.5264737840962111569e-16),
    (206, 500, 0.321527, 1.3269077056196299723e-5),
    (410, 500, 0.603961, 1.6344432734325723329e-25),
    (152, 500, 0.293165, 3.1269097354001339516e-1),
    (39, 500, 0.131725, 9.9994425085841617283e-1),
    (231, 500, 0.159561, 1.3083287998634299601e-56),
    (99, 500, 0.093537, 9.140561034175845276e-13),
    (376, 500, 0.170305, 1.4574164853806089795e-179),
    (301, 500, 0.591108, 3.2720360146636006846e-1),
    (72, 500, 0.759845, 1.0),
    (347, 500, 0.630826, 1.7776015806179846462e-3),
    (53, 500, 0.313841, 1.0),
    (406, 500, 0.7693, 1.2079055227210778739e-2),
    (405, 500, 0.688639, 6.2594567661154706697e-10),
    (411, 500, 0.809956, 2.668905761364960743e-1),
    (497, 500, 0.763762, 1.8829222332062145923e-53),
    (457, 500, 0.784964, 7.7750287334885122954e-15),
    (185, 500, 0.821293, 1.0),
    (217, 500, 0.494732, 9.971539132614621077e-1),
    (296, 500, 0.578338, 2.8376674847765256356e-1),
    (382, 500, 0.829651, 9.9992808702642163399e-1),
    (236, 500, 0.232274, 9.4506103529956634736e-32),
    (217, 500, 0.324241, 1.8962585865939252706e-7),
    (268, 500, 0.362023, 1.7780280482729935375e-15),
    (437, 500, 0.866288, 3.3436036982440370317e-1),
    (85, 500, 0.814802, 1.0),
    (275, 500, 0.46708, 1.227472082964216811e-4),
    (97, 500, 0.824609, 1.0),
    (241, 500, 0.450378, 8.4544638927637113745e-2),
    (452, 500, 0.692769, 8.0575555703322978682e-30),
    (223, 500, 0.480862, 9.4589606181408676803e-1),
    (4, 500, 0.668888, 1.0),
    (307, 500, 0.65339, 9.7038099532737716654e-1),
    (470, 500, 0.520611, 2.3599538078909625154e-95),
    (345, 500, 0.574237, 6.6584616331120086647e-8),
    (304, 500, 0.94692, 1.0),
    (261, 500, 0.461771, 3.996649841845413976e-3),
    (10, 500, 0.714237, 1.0),
    (288, 500, 0.624956, 9.8906625439162964213e-1),
    (113, 500, 0.717522, 1.0),
    (101, 500, 0.279272, 9.9997156562433239112e-1),
    (450, 500, 0.405349, 4.3123188223115273266e-119),
    (111, 500, 0.129936, 1.0417766638857987213e-8),
    (272, 500, 0.741893, 1.0),
    (280, 500, 0.449014, 4.1516020385543714557e-7),
    (61, 500, 0.209455, 9.9999988158077796144e-1),
    (279, 500, 0.513355, 2.5314839897430898797e-2),
    (269, 500, 0.380498, 6.8723286725120537335e-13),
    (116, 500, 0.22149, 3.0173718474181442104e-1),
    (477, 500, 0.107917, 1.2201435678553458037e-423),
    (140, 500, 0.212535, 2.1385638206621382376e-4),
    (67, 500, 0.624253, 1.0),
    (323, 500, 0.538023, 6.4268860194856715348e-7),
    (410, 500, 0.275153, 5.1702912893538428232e-142),
    (132, 500, 0.241356, 1.2949881637491907831e-1),
    (24, 500, 0.800133, 1.0),
    (435, 500, 0.802069, 4.1621812713186444097e-5),
    (467, 500, 0.726781, 2.6806499076896496823e-32),
    (463, 500, 0.734725, 8.5114553065700217993e-28),
    (134, 500, 0.178162, 4.1817275390855643519e-7),
    (190, 500, 0.410395, 9.2367629289304899672e-1),
    (20, 500, 0.189181, 1.0),
    (451, 500, 0.881196, 8.2893515998770754665e-2),
    (144, 500, 0.920472, 1.0),
    (362, 500, 0.6849, 3.2215729770592575292e-2),
    (31, 500, 0.11897, 9.9999316202556533599e-1),
    (328, 500, 0.450557, 1.9036528806730693739e-20),
    (490, 500, 0.078048, 1.9756250456833299275e-523),
    (428, 500, 0.792846, 1.8104747881367814849e-4),
    (373, 500, 0.673545, 2.5453059937456963441e-4),
    (274, 500, 0.500701, 1.914379428945045009e-2),
    (16, 500, 0.727012, 1.0),
    (186, 500, 0.334705, 4.3590547423916383816e-2),
    (387, 500, 0.413743, 1.7416669826599644947e-60),
    (440, 500, 0.719949, 4.4397361337730747126e-18),
    (112, 500, 0.051008, 4.5563379977214435529e-40),
    (443, 500, 0.880295, 3.7892573803454980874e-1),
    (291, 500, 0.853222, 1.0),
    (9435, 100000, 0.086435, 7.8408498128198323516e-19),
    (44379, 100000, 0.828871, 1.0),
    (9413, 100000, 0.095275, 8.9240842449715449868e-1),
    (8117, 100000, 0.295612, 1.0),
    (88787, 100000, 0.880017, 6.2740796345835069268e-15),
    (42242, 100000, 0.08283, 6.8111046498275306252e-18292),
    (34910, 100000, 0.342178, 2.078318445754934454e-6),
    (25394, 100000, 0.785991, 1.0),
    (71290, 100000, 0.703852, 1.6729625895734468803e-10),
    (86070, 100000, 0.731787, 1.5667632682770578424e-2104),
    (9521, 100000, 0.09355, 3.6408043680994544115e-2),
    (3791, 100000, 0.468852, 1.0),
    (37653, 100000, 0.373601, 2.802426856039610265e-2),
    (14788, 100000, 0.330182, 1.0),
    (66466, 100000, 0.657544, 1.0353491520400061475e-6),
    (14348, 100000, 0.82967, 1.0),
    (17599, 100000, 0.174749, 1.5169490412525411794e-1),
    (66476, 100000, 0.233972, 9.0398790799837185114e-18119),
    (94947, 100000, 0.948916, 2.1543176794222580574e-1),
    (43481, 100000, 0.686131, 1.0),
    (43269, 100000, 0.417563, 1.8136386131511517931e-22),
    (48175, 100000, 0.15043, 2.4659446035223589025e-13230),
    (73703, 100000, 0.725443, 8.4088060114320999185e-17),
    (36122, 100000, 0.41111, 1.0),
    (47775, 100000, 0.479859, 9.0957322004651566146e-1),
    (70413, 100000, 0.747338, 1.0),
    (93519, 100000, 0.931115, 1.4666594996244951735e-7),
    (55072, 100000, 0.50669, 2.6554660048424445464e-171),
    (49054, 100000, 0.480424, 7.8595039692548426469e-11),
    (39550, 100000, 0.237423, 1.312259357579203597e-2669),
    (16401, 100000, 0.160318, 7.6481485924699053781e-4),
    (47210, 100000, 0.098207, 8.8623525115607505474e-19919),
    (23642, 100000, 0.235202, 1.8285633179055631422e-1),
    (96263, 100000, 0.379676, 4.2299835341360033441e-34338),
    (93845, 100000, 0.93361, 2.6333573582789805931e-10),
    (47207, 100000, 0.270563, 4.4795721189488844408e-4002),
    (13489, 100000, 0.132067, 4.3277688695791219876e-3),
    (74393, 100000, 0.665502, 8.5362477032019261417e-631),
    (69689, 100000, 0.700371, 9.9189665315459118874e-1),
    (37321, 100000, 0.339587, 2.7945406140133053121e-110),
    (49071, 100000, 0.490865, 5.4030043276231828434e-1),
    (58478, 100000, 0.326719, 3.2572525478006844468e-6071),
    (35107, 100000, 0.341642, 1.807440910667730428e-10),
    (58910, 100000, 0.258473, 1.4864864455998054209e-10544),
    (54499, 100000, 0.532506, 1.2483997058707477464e-15),
    (40494, 100000, 0.726161, 1.0),
    (37450, 100000, 0.359357, 1.2925686342002055367e-23),
    (26492, 100000, 0.179391, 1.5751298130653966005e-974),
    (45580, 100000, 0.451916, 6.8657312663910559872e-3),
    (41387, 100000, 0.422293, 9.999999668091212277e-1),
    (67785, 100000, 0.675995, 1.0560141485786065716e-1),
    (98843, 100000, 0.357355, 1.7015223422888898039e-41657),
    (29505, 100000, 0.283566, 5.2018227796348488437e-16),
    (56016, 100000, 0.67787, 1.0),
    (89965, 100000, 0.901802, 9.8887755668473789968e-1),
    (86291, 100000, 0.632922, 4.7187657219259393954e-5755),
    (50081, 100000, 0.49228, 3.4839777128843564021e-8),
    (26075, 100000, 0.185702, 3.269105127233567318e-742),
    (18048, 100000, 0.183174, 9.86443162075496427e-1),
    (41170, 100000, 0.505646, 1.0),
    (89083, 100000, 0.890976, 5.6139201775222087506e-1),
    (6164, 100000, 0.197098, 1.0),
    (79190, 100000, 0.787898, 9.7308730186576863622e-4),
    (30568, 100000, 0.565466, 1.0),
    (41005, 100000, 0.402378, 3.918603968719923675e-7),
    (24359, 100000, 0.349661, 1.0),
    (78587, 100000, 0.772848, 2.256653620436466932e-23),
    (68544, 100000, 0.808247, 1.0),
    (32434, 100000, 0.329819, 9.9988939864094895315e-1),
    (9908, 100000, 0.330468, 1.0),
    (11347, 100000, 0.112754, 2.3838896286158610251e-1),
    (49021, 100000, 0.122812, 5.4923500199830963377e-17456),
    (64160, 100000, 0.637715, 5.3194228262958160327e-3),
    (82912, 100000, 0.423054, 9.3368357433597651653e-15202),
    (69757, 100000, 0.696454, 2.2245690615947969659e-1),
    (91342, 100000, 0.505697, 2.0738493012782558892e-16907),
    (28763, 100000, 0.29062, 9.8158055178957788118e-1),
    (7420, 100000, 0.678485, 1.0),
    (81096, 100000, 0.800772, 2.446073484900081297e-16),
    (64044, 100000, 0.212993, 5.0785346577708401397e-18391),
    (34995, 100000, 0.33772, 1.8032562140570826482e-16),
    (30616, 100000, 0.752856, 1.0),
    (85245, 100000, 0.855028, 9.8970460410446455529e-1),
    (73197, 100000, 0.76455, 1.0),
    (95341, 100000, 0.947136, 8.4576362324061947744e-20),
    (76425, 100000, 0.862715, 1.0),
    (56110, 100000, 0.566263, 9.9951008278356559551e-1),
    (41307, 100000, 0.108933, 6.3230331405002872799e-13272),
    (5030, 100000, 0.051809, 9.8492198347959561347e-1),
    (44454, 100000, 0.324585, 1.045639688492847024e-1357),
    (50701, 100000, 0.511354, 9.970303727359924309e-1),
    (14211, 100000, 0.146895, 9.9999135793681961203e-1),
    (55769, 100000, 0.543427, 6.5330361283954830646e-20),
    (75536, 100000, 0.948157, 1.0),
    (51422, 100000, 0.509219, 7.8753768448365907925e-4),
    (37149, 100000, 0.156336, 4.7066535996932393831e-5931),
    (90589, 100000, 0.898664, 1.02254274035213439e-14),
    (87742, 100000, 0.148926, 1.4202630360480405921e-57269),
    (74643, 100000, 0.740097, 2.3898284942560573579e-6),
    (43524, 100000, 0.612656, 1.0),
];

/// (p, Phi^-1(p))
pub const NORMAL_QUANTILES: &[(f64, f64)] = &[
    (1e-10, -6.3613409024040561991),
    (1e-06, -4.7534243088228989573),
    (0.001, -3.0902323061678135354),
    (0.025, -1.9599639845400542118),
    (0.1, -1.2815515655446004353),
    (0.25, -6.744897501960817432e-1),
    (0.5, 0.0),
    (0.75, 6.744897501960817432e-1),
    (0.9, 1.2815515655446005935),
    (0.95, 1.6448536269514722843),
    (0.975, 1.9599639845400538556),
    (0.999, 3.0902323061678132778),
    (0.999999, 4.7534243088170877657),
];
