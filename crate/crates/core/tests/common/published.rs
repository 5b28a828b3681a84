//! Score tables as printed (rounded) in the source publication. Used as
//! fixtures for arithmetic identities and the rank test.

/// Insurer decomposition rows: black box, tandem, network system, process 1,
/// process 2, stage 1, stage 2.
pub const INSURER_DECOMPOSITION: [[f64; 7]; 24] = [
    [0.0750, 0.2039, 0.4079, 0.1254, 0.2825, 0.0627, 0.1413],
    [0.0000, 0.2090, 0.4179, 0.0000, 0.4179, 0.0000, 0.2090],
    [0.0585, 0.2217, 0.4434, 0.4434, 0.0000, 0.2217, 0.0000],
    [10.9947, 2.8362, 5.6724, 0.8149, 4.8575, 0.4075, 2.4287],
    [0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000],
    [0.7937, 1.2915, 2.5830, 0.7414, 1.8415, 0.3707, 0.9208],
    [0.6002, 2.1819, 4.3639, 0.0012, 4.3627, 0.0006, 2.1813],
    [0.3554, 1.6132, 3.2265, 0.1665, 3.0600, 0.0833, 1.5300],
    [3.2489, 1.5207, 3.0414, 0.0000, 3.0414, 0.0000, 1.5207],
    [0.3290, 0.4405, 0.8809, 0.0000, 0.8809, 0.0000, 0.4405],
    [1.1975, 57.3520, 114.7040, 0.8877, 113.816, 0.4439, 56.908],
    [0.0000, 0.2350, 0.4699, 0.4699, 0.0000, 0.2350, 0.0000],
    [0.2267, 3.7035, 7.4070, 0.0000, 7.4070, 0.0000, 3.7035],
    [1.1417, 2.7598, 5.5195, 0.2932, 5.2263, 0.1466, 2.6132],
    [0.0006, 0.2776, 0.5552, 0.1364, 0.4187, 0.0682, 0.2094],
    [2.2001, 3.6744, 7.3488, 0.9137, 6.4351, 0.4569, 3.2175],
    [0.0247, 0.4993, 0.9987, 0.0000, 0.9987, 0.0000, 0.4993],
    [2.6003, 1.6090, 3.2181, 0.0000, 3.2181, 0.0000, 1.6090],
    [0.0308, 1.1551, 2.3103, 0.0000, 2.3103, 0.0000, 1.1551],
    [0.0172, 0.9978, 1.9955, 0.0000, 1.9955, 0.0000, 0.9978],
    [39.2892, 78.0128, 156.0257, 17.7392, 138.286, 8.8696, 69.143],
    [0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000],
    [82.4934, 15.6996, 31.3992, 11.0917, 20.3075, 5.5459, 10.153],
    [14.1229, 1.3540, 2.7079, 0.0000, 2.7079, 0.0000, 1.3540],
];

/// Regional profitability-stage MPSS: operation 2014, operation 2015, R&D
/// 2014, R&D 2015, profitability 2014, profitability 2015.
pub const PROFITABILITY_MPSS: [[f64; 6]; 31] = [
    [4.960, 4.282, 0.000, 0.000, 4.960, 4.282],
    [2.314, 1.818, 2.609, 2.427, 4.923, 4.245],
    [0.907, 0.910, 11.506, 7.544, 12.414, 8.454],
    [3.500, 6.047, 9.488, 12.272, 12.989, 18.319],
    [3.357, 2.920, 52.775, 39.875, 56.132, 42.796],
    [1.110, 2.393, 3.196, 3.207, 4.305, 5.600],
    [2.352, 2.414, 10.795, 10.700, 13.147, 13.114],
    [6.569, 8.532, 3.358, 3.292, 9.927, 11.824],
    [0.570, 0.000, 1.345, 1.212, 1.915, 1.212],
    [0.015, 0.000, 0.363, 0.413, 0.379, 0.413],
    [0.000, 0.000, 1.187, 1.028, 1.187, 1.028],
    [1.327, 1.442, 0.744, 0.544, 2.070, 1.986],
    [0.000, 0.000, 6.854, 4.334, 6.854, 4.334],
    [0.000, 0.065, 16.603, 13.882, 16.603, 13.948],
    [0.000, 0.000, 0.748, 0.706, 0.748, 0.706],
    [0.071, 0.072, 3.264, 3.506, 3.335, 3.578],
    [0.749, 0.801, 2.562, 2.071, 3.311, 2.872],
    [1.777, 2.134, 4.478, 3.424, 6.255, 5.558],
    [0.003, 0.068, 0.830, 0.653, 0.833, 0.721],
    [2.955, 2.927, 0.750, 0.000, 3.705, 2.927],
    [46.894, 45.906, 59.594, 51.611, 106.488, 97.517],
    [0.771, 0.097, 2.621, 1.312, 3.392, 1.409],
    [1.128, 1.525, 1.419, 1.056, 2.547, 2.581],
    [1.975, 3.308, 3.831, 6.460, 5.806, 9.768],
    [6.483, 2.655, 11.991, 10.174, 18.474, 12.829],
    [1238.33, 1113.36, 55.817, 0.000, 1294.14, 1113.36],
    [5.304, 4.656, 1.749, 3.271, 7.053, 7.926],
    [11.380, 13.310, 10.642, 11.136, 22.022, 24.446],
    [23.047, 31.931, 60.621, 30.266, 83.668, 62.196],
    [8.987, 11.826, 23.271, 21.688, 32.258, 33.514],
    [0.032, 7.987, 23.061, 21.636, 23.093, 29.623],
];

/// Regional marketability MPSS 2014, 2015 and chain MPSS 2014, 2015.
pub const MARKETABILITY_MPSS: [[f64; 4]; 31] = [
    [0.000, 0.000, 4.960, 4.282],
    [2.430, 2.472, 7.353, 6.717],
    [3.131, 2.367, 9.283, 10.820],
    [2.907, 3.095, 15.895, 21.414],
    [12.034, 14.247, 68.166, 57.043],
    [1.504, 1.654, 5.810, 7.254],
    [2.750, 9.286, 10.398, 3.828],
    [1.781, 2.650, 11.708, 14.474],
    [3.071, 1.282, 4.986, 2.494],
    [0.155, 0.468, 0.534, 0.881],
    [5.954, 6.296, 4.768, 5.268],
    [1.623, 1.595, 3.693, 3.581],
    [1.251, 25.047, 5.604, 20.713],
    [11.067, 15.688, 27.670, 1.741],
    [0.398, 0.071, 1.146, 0.777],
    [5.101, 8.907, 1.767, 5.328],
    [2.597, 2.663, 5.908, 5.535],
    [4.377, 0.198, 10.632, 5.756],
    [0.211, 0.136, 1.043, 0.858],
    [23.081, 10.639, 19.376, 7.712],
    [388.092, 116.967, 281.604, 19.450],
    [4.982, 23.633, 8.374, 22.224],
    [0.684, 1.423, 3.232, 4.004],
    [0.458, 0.311, 6.265, 9.457],
    [2.090, 6.600, 20.564, 19.429],
    [13371.934, 55.924, 12077.791, 1169.284],
    [2.303, 3.038, 9.356, 10.964],
    [6.199, 7.041, 28.221, 31.487],
    [49.475, 59.540, 133.143, 121.736],
    [65.522, 76.994, 33.264, 43.480],
    [71.715, 109.097, 48.622, 79.473],
];

/// Published rank-test results: (H, df, p) for operation, R&D and
/// marketability.
pub const RANK_TEST: [(f64, usize, f64); 3] = [(0.119, 1, 0.730), (0.557, 1, 0.456), (0.294, 1, 0.558)];

pub struct TargetRow {
    pub region: u32,
    pub current: [f64; 2],
    pub appropriate: [f64; 2],
    pub gap: [f64; 2],
    /// Blank cells continue the label of the row above.
    pub strategy: &'static str,
}

/// 2015 intermediate targets (Sales, Patents).
pub const TARGETS_2015: [TargetRow; 30] = [
    TargetRow { region: 1, current: [17279.0, 88930.0], appropriate: [3604.23, 88930.0], gap: [-13675.0, 0.0], strategy: "Sales↓" },
    TargetRow { region: 2, current: [27460.0, 28510.0], appropriate: [14417.74, 24630.17], gap: [-13043.0, -3880.0], strategy: "Sales↓, Patents↓" },
    TargetRow { region: 3, current: [45407.0, 11259.0], appropriate: [13666.27, 9262.706], gap: [-31741.0, -1996.0], strategy: "Sales↓, Patents↓" },
    TargetRow { region: 6, current: [32927.0, 19332.0], appropriate: [12417.94, 14714.26], gap: [-20509.0, -4618.0], strategy: "Sales↓, Patents↓" },
    TargetRow { region: 7, current: [22529.0, 6154.0], appropriate: [9557.201, 5888.075], gap: [-12972.0, -266.0], strategy: "Sales↓, Patents↓" },
    TargetRow { region: 8, current: [11524.0, 14663.0], appropriate: [9854.652, 9016.993], gap: [-1669.0, -5646.0], strategy: "Sales↓, Patents↓" },
    TargetRow { region: 9, current: [31214.0, 46976.0], appropriate: [12205.98, 33416.11], gap: [-19008.0, -13560.0], strategy: "Sales↓, Patents↓" },
    TargetRow { region: 10, current: [147392.0, 154608.0], appropriate: [26272.14, 32742.35], gap: [-121120.0, -121866.0], strategy: "Sales↓, Patents↓" },
    TargetRow { region: 11, current: [64279.0, 67674.0], appropriate: [15799.03, 11800.63], gap: [-48480.0, -55873.0], strategy: "Sales↓, Patents↓" },
    TargetRow { region: 12, current: [38798.0, 68314.0], appropriate: [13208.93, 12320.07], gap: [-25589.0, -55994.0], strategy: "Sales↓, Patents↓" },
    TargetRow { region: 13, current: [40216.0, 17663.0], appropriate: [11788.21, 9105.039], gap: [-28428.0, -8558.0], strategy: "Sales↓, Patents↓" },
    TargetRow { region: 15, current: [144234.0, 93475.0], appropriate: [31463.24, 30196.09], gap: [-112770.0, -63279.0], strategy: "Sales↓, Patents↓" },
    TargetRow { region: 16, current: [73367.0, 21338.0], appropriate: [20605.4, 14738.55], gap: [-52762.0, -6599.0], strategy: "Sales↓, Patents↓" },
    TargetRow { region: 17, current: [44113.0, 30204.0], appropriate: [11134.44, 26646.14], gap: [-32979.0, -3558.0], strategy: "Sales↓, Patents↓" },
    TargetRow { region: 18, current: [36232.0, 19499.0], appropriate: [12870.41, 8767.787], gap: [-23361.0, -10731.0], strategy: "Sales↓, Patents↓" },
    TargetRow { region: 19, current: [121050.0, 103941.0], appropriate: [23589.34, 33999.53], gap: [-97460.0, -69941.0], strategy: "Sales↓, Patents↓" },
    TargetRow { region: 20, current: [21412.0, 30815.0], appropriate: [11443.03, 6230.643], gap: [-9969.0, -24584.0], strategy: "Sales↓, Patents↓" },
    TargetRow { region: 22, current: [20945.0, 35086.0], appropriate: [8074.055, 7979.008], gap: [-12871.0, -27107.0], strategy: "Sales↓, Patents↓" },
    TargetRow { region: 23, current: [39213.0, 40437.0], appropriate: [17432.6, 18680.7], gap: [-21781.0, -21756.0], strategy: "Sales↓, Patents↓" },
    TargetRow { region: 24, current: [9821.0, 7538.0], appropriate: [6290.621, 5061.953], gap: [-3530.0, -2476.0], strategy: "Sales↓, Patents↓" },
    TargetRow { region: 30, current: [3604.0, 2626.0], appropriate: [3198.178, 2585.815], gap: [-406.0, -40.0], strategy: "Sales↓, Patents↓" },
    TargetRow { region: 4, current: [12567.0, 5680.0], appropriate: [8625.576, 6346.337], gap: [-3941.0, 666.0], strategy: "Sales↓, Patents↑" },
    TargetRow { region: 5, current: [18702.0, 2254.0], appropriate: [5437.341, 2373.755], gap: [-13265.0, 120.0], strategy: "Sales↓, Patents↑" },
    TargetRow { region: 14, current: [30618.0, 5722.0], appropriate: [12804.81, 10539.51], gap: [-17814.0, 4818.0], strategy: "Sales↓, Patents↑" },
    TargetRow { region: 25, current: [9668.0, 6301.0], appropriate: [6154.199, 6619.61], gap: [-3514.0, 319.0], strategy: "Sales↓, Patents↑" },
    TargetRow { region: 27, current: [20248.0, 17322.0], appropriate: [8778.824, 21821.65], gap: [-11469.0, 4500.0], strategy: "Sales↓, Patents↑" },
    TargetRow { region: 31, current: [7945.0, 3024.0], appropriate: [6876.113, 3777.211], gap: [-1069.0, 753.0], strategy: "Sales↓, Patents↑" },
    TargetRow { region: 21, current: [1833.0, 1211.0], appropriate: [2876.971, 1902.661], gap: [1044.0, 692.0], strategy: "Sales↑, Patents↑" },
    TargetRow { region: 26, current: [126.0, 128.0], appropriate: [1200.378, 600.215], gap: [1074.258, 472.215], strategy: "Sales↑, Patents↑" },
    TargetRow { region: 28, current: [6942.0, 5504.0], appropriate: [11580.22, 10934.21], gap: [4638.0, 5430.0], strategy: "Sales↑, Patents↑" },
];
