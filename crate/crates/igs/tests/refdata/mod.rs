//! Published reference measurements: normalised covering-number curves of
//! level-5 runs of the two example systems. Values are (L, N_L / |V|).

/// Level-5 curve of the deterministic example run (41 points, L = 10..50).
pub const DETERMINISTIC_CURVE: [(f64, f64); 41] = [
    (10.0, 0.025797643),
    (11.0, 0.015665421),
    (12.0, 0.015665421),
    (13.0, 0.020048865),
    (14.0, 0.014156367),
    (15.0, 0.014156367),
    (16.0, 0.012791032),
    (17.0, 0.008407588),
    (18.0, 0.008407588),
    (19.0, 0.008407588),
    (20.0, 0.007042254),
    (21.0, 0.007042254),
    (22.0, 0.005533199),
    (23.0, 0.005533199),
    (24.0, 0.005533199),
    (25.0, 0.004024145),
    (26.0, 0.004024145),
    (27.0, 0.004024145),
    (28.0, 0.004024145),
    (29.0, 0.004024145),
    (30.0, 0.003592986),
    (31.0, 0.003592986),
    (32.0, 0.003592986),
    (33.0, 0.003592986),
    (34.0, 0.003592986),
    (35.0, 0.002443231),
    (36.0, 0.002443231),
    (37.0, 0.002443231),
    (38.0, 0.002299511),
    (39.0, 0.002299511),
    (40.0, 0.002299511),
    (41.0, 0.002299511),
    (42.0, 0.002083932),
    (43.0, 0.002083932),
    (44.0, 0.002083932),
    (45.0, 0.002083932),
    (46.0, 0.002083932),
    (47.0, 0.002083932),
    (48.0, 0.001868353),
    (49.0, 0.002083932),
    (50.0, 0.002083932),
];

/// Ten level-5 curves of the random example (29 points each, L = 2..30).
pub const RANDOM_CURVES: [[(f64, f64); 29]; 10] = [
    [
        (2.0, 0.1483),
        (3.0, 0.0942),
        (4.0, 0.0697),
        (5.0, 0.0463),
        (6.0, 0.0368),
        (7.0, 0.0329),
        (8.0, 0.0256),
        (9.0, 0.0217),
        (10.0, 0.0173),
        (11.0, 0.0145),
        (12.0, 0.0128),
        (13.0, 0.0106),
        (14.0, 0.01),
        (15.0, 0.0084),
        (16.0, 0.0089),
        (17.0, 0.0072),
        (18.0, 0.0072),
        (19.0, 0.0072),
        (20.0, 0.0072),
        (21.0, 0.0056),
        (22.0, 0.0056),
        (23.0, 0.0056),
        (24.0, 0.0045),
        (25.0, 0.0045),
        (26.0, 0.0039),
        (27.0, 0.0039),
        (28.0, 0.0039),
        (29.0, 0.0039),
        (30.0, 0.0033),
    ],
    [
        (2.0, 0.1446),
        (3.0, 0.093),
        (4.0, 0.0659),
        (5.0, 0.0434),
        (6.0, 0.0387),
        (7.0, 0.0326),
        (8.0, 0.0231),
        (9.0, 0.019),
        (10.0, 0.0156),
        (11.0, 0.0129),
        (12.0, 0.0122),
        (13.0, 0.0095),
        (14.0, 0.0095),
        (15.0, 0.0088),
        (16.0, 0.0088),
        (17.0, 0.0088),
        (18.0, 0.0095),
        (19.0, 0.0095),
        (20.0, 0.0075),
        (21.0, 0.0068),
        (22.0, 0.0061),
        (23.0, 0.0048),
        (24.0, 0.0048),
        (25.0, 0.0048),
        (26.0, 0.0054),
        (27.0, 0.0048),
        (28.0, 0.0048),
        (29.0, 0.0041),
        (30.0, 0.0034),
    ],
    [
        (2.0, 0.1464),
        (3.0, 0.084),
        (4.0, 0.0641),
        (5.0, 0.0441),
        (6.0, 0.0316),
        (7.0, 0.0316),
        (8.0, 0.02),
        (9.0, 0.0183),
        (10.0, 0.0133),
        (11.0, 0.0116),
        (12.0, 0.0108),
        (13.0, 0.0108),
        (14.0, 0.0092),
        (15.0, 0.0092),
        (16.0, 0.0083),
        (17.0, 0.0083),
        (18.0, 0.0083),
        (19.0, 0.0058),
        (20.0, 0.0058),
        (21.0, 0.005),
        (22.0, 0.005),
        (23.0, 0.005),
        (24.0, 0.005),
        (25.0, 0.005),
        (26.0, 0.005),
        (27.0, 0.005),
        (28.0, 0.005),
        (29.0, 0.005),
        (30.0, 0.0042),
    ],
    [
        (2.0, 0.1423),
        (3.0, 0.0923),
        (4.0, 0.0663),
        (5.0, 0.0423),
        (6.0, 0.0365),
        (7.0, 0.0308),
        (8.0, 0.024),
        (9.0, 0.0192),
        (10.0, 0.0154),
        (11.0, 0.0135),
        (12.0, 0.0125),
        (13.0, 0.0125),
        (14.0, 0.0115),
        (15.0, 0.0106),
        (16.0, 0.0077),
        (17.0, 0.0077),
        (18.0, 0.0067),
        (19.0, 0.0038),
        (20.0, 0.0038),
        (21.0, 0.0038),
        (22.0, 0.0038),
        (23.0, 0.0038),
        (24.0, 0.0038),
        (25.0, 0.0038),
        (26.0, 0.0038),
        (27.0, 0.0029),
        (28.0, 0.0029),
        (29.0, 0.0019),
        (30.0, 0.0019),
    ],
    [
        (2.0, 0.1513),
        (3.0, 0.0811),
        (4.0, 0.0666),
        (5.0, 0.0472),
        (6.0, 0.04),
        (7.0, 0.0375),
        (8.0, 0.023),
        (9.0, 0.0194),
        (10.0, 0.0169),
        (11.0, 0.0157),
        (12.0, 0.0133),
        (13.0, 0.0133),
        (14.0, 0.0085),
        (15.0, 0.0085),
        (16.0, 0.0085),
        (17.0, 0.0085),
        (18.0, 0.0085),
        (19.0, 0.0073),
        (20.0, 0.0048),
        (21.0, 0.0048),
        (22.0, 0.0048),
        (23.0, 0.0048),
        (24.0, 0.0048),
        (25.0, 0.0048),
        (26.0, 0.0036),
        (27.0, 0.0036),
        (28.0, 0.0036),
        (29.0, 0.0024),
        (30.0, 0.0024),
    ],
    [
        (2.0, 0.1478),
        (3.0, 0.0853),
        (4.0, 0.0613),
        (5.0, 0.0445),
        (6.0, 0.0373),
        (7.0, 0.0337),
        (8.0, 0.0228),
        (9.0, 0.018),
        (10.0, 0.0156),
        (11.0, 0.0144),
        (12.0, 0.0132),
        (13.0, 0.012),
        (14.0, 0.0096),
        (15.0, 0.0096),
        (16.0, 0.0084),
        (17.0, 0.0084),
        (18.0, 0.0084),
        (19.0, 0.0084),
        (20.0, 0.006),
        (21.0, 0.006),
        (22.0, 0.006),
        (23.0, 0.006),
        (24.0, 0.0048),
        (25.0, 0.0048),
        (26.0, 0.0048),
        (27.0, 0.0036),
        (28.0, 0.0036),
        (29.0, 0.0036),
        (30.0, 0.0024),
    ],
    [
        (2.0, 0.1407),
        (3.0, 0.0906),
        (4.0, 0.0665),
        (5.0, 0.0462),
        (6.0, 0.0356),
        (7.0, 0.0337),
        (8.0, 0.027),
        (9.0, 0.025),
        (10.0, 0.0202),
        (11.0, 0.0154),
        (12.0, 0.0154),
        (13.0, 0.0154),
        (14.0, 0.0116),
        (15.0, 0.0106),
        (16.0, 0.0096),
        (17.0, 0.0087),
        (18.0, 0.0077),
        (19.0, 0.0058),
        (20.0, 0.0058),
        (21.0, 0.0058),
        (22.0, 0.0048),
        (23.0, 0.0039),
        (24.0, 0.0039),
        (25.0, 0.0039),
        (26.0, 0.0039),
        (27.0, 0.0039),
        (28.0, 0.0039),
        (29.0, 0.0039),
        (30.0, 0.0039),
    ],
    [
        (2.0, 0.1469),
        (3.0, 0.0952),
        (4.0, 0.0707),
        (5.0, 0.0449),
        (6.0, 0.0395),
        (7.0, 0.0354),
        (8.0, 0.0218),
        (9.0, 0.0204),
        (10.0, 0.0177),
        (11.0, 0.0163),
        (12.0, 0.0122),
        (13.0, 0.0136),
        (14.0, 0.0109),
        (15.0, 0.0109),
        (16.0, 0.0095),
        (17.0, 0.0082),
        (18.0, 0.0082),
        (19.0, 0.0082),
        (20.0, 0.0082),
        (21.0, 0.0068),
        (22.0, 0.0068),
        (23.0, 0.0068),
        (24.0, 0.0054),
        (25.0, 0.0054),
        (26.0, 0.0041),
        (27.0, 0.0041),
        (28.0, 0.0041),
        (29.0, 0.0041),
        (30.0, 0.0041),
    ],
    [
        (2.0, 0.1465),
        (3.0, 0.094),
        (4.0, 0.0678),
        (5.0, 0.0459),
        (6.0, 0.0364),
        (7.0, 0.0321),
        (8.0, 0.0204),
        (9.0, 0.0175),
        (10.0, 0.0153),
        (11.0, 0.0124),
        (12.0, 0.0102),
        (13.0, 0.0102),
        (14.0, 0.0095),
        (15.0, 0.0087),
        (16.0, 0.0087),
        (17.0, 0.0087),
        (18.0, 0.008),
        (19.0, 0.0066),
        (20.0, 0.0051),
        (21.0, 0.0044),
        (22.0, 0.0044),
        (23.0, 0.0044),
        (24.0, 0.0044),
        (25.0, 0.0044),
        (26.0, 0.0044),
        (27.0, 0.0044),
        (28.0, 0.0036),
        (29.0, 0.0036),
        (30.0, 0.0036),
    ],
    [
        (2.0, 0.1487),
        (3.0, 0.0855),
        (4.0, 0.0632),
        (5.0, 0.0458),
        (6.0, 0.0347),
        (7.0, 0.0335),
        (8.0, 0.0248),
        (9.0, 0.0235),
        (10.0, 0.0173),
        (11.0, 0.0161),
        (12.0, 0.0136),
        (13.0, 0.0124),
        (14.0, 0.0099),
        (15.0, 0.0112),
        (16.0, 0.0099),
        (17.0, 0.0099),
        (18.0, 0.0087),
        (19.0, 0.0074),
        (20.0, 0.0062),
        (21.0, 0.005),
        (22.0, 0.005),
        (23.0, 0.005),
        (24.0, 0.005),
        (25.0, 0.005),
        (26.0, 0.005),
        (27.0, 0.005),
        (28.0, 0.005),
        (29.0, 0.005),
        (30.0, 0.005),
    ],
];
