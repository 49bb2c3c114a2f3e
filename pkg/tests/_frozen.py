"""Frozen reference values for the unit tests.

Scalar building blocks (EN, AN, BM, S2, BESSEL_*, LAMBDA_*, OMEGA_*, TAU,
TCAP, ETA, KXI) were computed independently of the package: mpmath closed
forms and direct quadrature of the defining integrals at 50 significant
digits, exact Fraction/Stirling arithmetic for the polynomial weights, and
sympy-built Legendre derivative polynomials.  L_*, W_* and NEUMANN_FULL
targets come from the package's arbitrary-precision reference module,
accepted only when two runs 10 digits apart agree (rel shift < 1e-30).

Formats (all values 30-significant-digit strings):
    EN:  (n, z, E_n(z))                 AN:  (n, z, a_n(z))
    BM:  (m, z, b_m(z))                 S2:  (m, k, S(m,k))
    BESSEL_I/K: (mu, z, value)
    LAMBDA_SMALL/BIG: (m, mu, alpha, value)
    OMEGA_LO:  (n, p, alpha1, alpha2, omega_np)
    OMEGA_HI:  (n, p, alpha1, alpha2, Omega_np)
    TAU/TCAP:  (m, mu, p, alpha1, alpha2, value)
    ETA: (mu, sigma, q, beta, value)    KXI: (mu, sigma, p, alpha, value)
    L_PLAIN:  (mu, alpha, L_mu)         L_RAISED: (mu, p, sigma, alpha, value)
    W_PLAIN:  (p1, p2, alpha1, alpha2, mu, value)
    W_SIGMA:  (mu, sigma, p1, p2, alpha1, alpha2, value)
    NEUMANN_FULL: (p1, q1, p2, q2, sigma, alpha1, alpha2, beta1, beta2, R, value)
"""

EN = [
    (1, '0.3', '0.905676651675846712430327522142'),
    (4, '0.3', '0.216935224237504519837347536980'),
    (1, '1.0', '0.219383934395520273677163775460'),
    (2, '7.5', '0.0000593526706447318534752128894458'),
    (6, '7.5', '0.0000422525889521363343257708646992'),
    (12, '30.0', '2.24276219750346451220542988062e-15'),
    (0, '2.0', '0.0676676416183063459469997474862'),
    (-1, '2.0', '0.101501462427459518920499621229'),
    (-3, '0.5', '95.8318442345960809294003265286'),
    (-8, '12.0', '0.00000121143144367400093738426426032'),
    (-15, '35.0', '3.05342892421754015057829130517e-17'),
]

AN = [
    (0, '0.7', '0.719163851726557836135999866575'),
    (3, '0.7', '0.143776532918773427118852469869'),
    (10, '4.0', '0.00245688993886000413505235136598'),
    (40, '25.0', '8.03150624527151980964430992875e-13'),
    (5, '0.0', '0.166666666666666666666666666667'),
    (0, '30.0', '0.0333333333333302141256770532751'),
]

BM = [
    (0, '7.0', '1.00000000000000000000000000000'),
    (1, '0.5', '0.0625000000000000000000000000000'),
    (3, '0.5', '0.0566813151041666666666666666667'),
    (2, '5.0', '13.2812500000000000000000000000'),
    (8, '5.0', '7876.48776925745464506603422619'),
    (20, '30.0', '-860523642948893604577930436.982'),
    (45, '30.0', '-3.72828916269122982623288412125e+59'),
]

S2 = [
    (5, 2, 15),
    (6, 3, 90),
    (9, 4, 7770),
    (12, 12, 1),
    (15, 1, 1),
]

BESSEL_I = [
    (0, '2.5', '2.42008179241591492858012945534'),
    (3, '30.0', '145355844076.476249017861098639'),
    (12, '4.0', '0.00000284556590166742402622857277979'),
    (25, '10.0', '0.00000000848647456182345918655667191774'),
    (60, '30.0', '1.76474732483617247903176504110e-11'),
]

BESSEL_K = [
    (0, '2.5', '0.0515755257293537484575468138492'),
    (3, '30.0', '5.96395060246030967280496401331e-15'),
    (12, '4.0', '5256.27464231379372024474030505'),
    (25, '10.0', '337852.721852297953162811948611'),
    (80, '0.5', '2.06793539214290597765315240043e+166'),
]

LAMBDA_SMALL = [
    (0, 12, '2.0', '0.0121239654178184002169480850401'),
    (2, 12, '2.0', '-0.00582487391807173020244207008502'),
    (5, 12, '2.0', '-0.0267585537060841731752314128449'),
    (3, 30, '10.0', '0.00269411568711361066474492501104'),
    (8, 40, '30.0', '0.127591913972482267563902376950'),
]

LAMBDA_BIG = [
    (0, 12, '2.0', '0.00956422722965938687204802151654'),
    (2, 12, '2.0', '-0.00448848204412870274236963293466'),
    (5, 12, '2.0', '-0.0286820701679577808498091310246'),
    (3, 30, '10.0', '0.00230368607573266704341831847282'),
    (8, 40, '30.0', '0.0801059176154775862446915461923'),
]

OMEGA_LO = [
    (0, 0, '1.0', '0.5', '0.238728703977775243550508871097'),
    (5, 2, '3.0', '1.0', '0.00153504134912416883299041611540'),
    (20, 4, '10.0', '3.0', '0.0000000135377815708114637237800789618'),
    (12, 0, '2.0', '1.9', '0.000480821005324835184269855711172'),
    (30, 8, '25.0', '5.0', '1.61393057744002189004606617799e-16'),
]

OMEGA_HI = [
    (0, 0, '1.0', '0.5', '0.200039164813265303803818679823'),
    (-5, 2, '3.0', '1.0', '0.00132568481749743020608471806352'),
    (-20, 0, '2.0', '2.0', '0.000211908068393411935720661828069'),
    (4, 3, '1.5', '2.5', '0.0132640527047317142374783552649'),
    (-12, 4, '5.0', '5.0', '0.000000411730035107183193030622253242'),
    (-35, 6, '10.0', '50.0', '1.89259883110171909328384658200e-30'),
]

TAU = [
    (0, 20, 0, '1.0', '1.0', '0.00345927343978613069058160552651'),
    (3, 20, 0, '1.0', '1.0', '0.000522330833754037246184453599010'),
    (6, 25, 2, '2.0', '3.0', '-0.00214307320572810908386439905248'),
    (10, 35, 8, '1.0', '10.0', '10.5090796208853818066003374951'),
]

TCAP = [
    (0, 20, 0, '1.0', '1.0', '0.00313856830730128813624022269731'),
    (3, 20, 0, '1.0', '1.0', '0.000514923732837736671357906489647'),
    (6, 25, 2, '2.0', '3.0', '-0.00286942632369696347180343738748'),
    (10, 35, 8, '1.0', '10.0', '6.73907784824856004347215402504'),
]

ETA = [
    (0, 0, 0, '0.8', '1.11013247773452875821839696649'),
    (4, 0, 2, '1.5', '0.0364909498451668913470595478396'),
    (6, 2, 1, '2.5', '-0.00700942022269554977380149570692'),
    (9, 3, 3, '0.3', '0.0000111621478472599220752511941757'),
    (2, 1, 0, '10.0', '-179.190080700844532519876387338'),
    (5, 0, 4, '-1.2', '-0.0197049795561437810478888448560'),
]

KXI = [
    (0, 0, 0, '1.0', '0.367879441171442321595523770161'),
    (4, 0, 2, '1.5', '172.739473199353564932455097618'),
    (6, 2, 1, '2.5', '0.677245104870429671664750160478'),
    (9, 3, 0, '6.0', '0.000141913955863493258588966976535'),
    (12, 1, 8, '2.0', '57146663188533.0726605671094106'),
]

L_PLAIN = [
    (26, '2.5', '0.00011610672850272635056217162432'),
    (33, '12.0', '0.00000000536352504110473491787885011989'),
    (45, '0.7', '0.000239734096287328629417609580412'),
]

L_RAISED = [
    (12, 2, 1, '3.0', '-0.00000403158611986541412435274829803'),
    (15, 1, 2, '0.5', '0.000000367552845665360300958158861626'),
    (10, 3, 0, '1.0', '0.00347004924423039062471729535283'),
    (18, 2, 2, '4.0', '0.00000000361764734277904329303783239881'),
    (14, 0, 3, '2.0', '-0.00000000340212517927149514506038287955'),
]

W_PLAIN = [
    (0, 1, '1.0', '1.0', 12, '-0.100014972346601568807236813874'),
    (0, 2, '2.0', '3.0', 16, '0.195810021346647502751855779368'),
    (1, 2, '0.5', '2.0', 14, '58.9499070991494092678179917714'),
    (2, 3, '1.0', '2.5', 18, '-31379.54334739466112862566716'),
    (0, 1, '5.0', '5.0', 25, '-0.000000983632548230987096750050568261'),
]

W_SIGMA = [
    (16, 1, 1, 0, '1.0', '2.5', '0.0000548144836129660653607661120439'),
    (18, 3, 0, 2, '1.0', '2.5', '44.1037475576679375704159220472'),
    (12, 2, 0, 0, '1.0', '1.0', '0.00108020124058869318060550223973'),
    (20, 2, 1, 1, '2.0', '4.0', '-0.000444007810555702339455228466896'),
    (15, 1, 0, 0, '0.5', '1.5', '0.000422682501624787578615219158914'),
]

NEUMANN_FULL = [
    (0, 0, 0, 0, 0, '1.0', '1.5', '0.0', '0.7', '1.0', '0.287626937653631440029540319285'),
    (0, 1, 0, 1, 0, '2.0', '2.0', '1.0', '0.5', '1.4', '0.00468692019520663043249019832492'),
    (1, 2, 0, 3, 2, '3.0', '2.5', '1.5', '1.0', '2.0', '-0.00000110202474295704051334006110866'),
    (0, 1, 0, 1, 1, '2.0', '2.0', '1.0', '0.5', '1.0', '-0.000605058144480521067465850950171'),
]
