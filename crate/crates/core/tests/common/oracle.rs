// Generated by tools/gen_oracle.py with mpmath. Do not edit by hand.
#![allow(dead_code)]

pub const THETA: &[(f64, f64)] = &[
    (1.0e+0, -1.767_547_952_812_290_4),
    (2.0e+0, -2.525_910_918_816_132_6),
    (5.0e+0, -3.459_620_375_363_462_7),
    (1.0e+1, -3.067_074_396_289_895_4),
    (1.45e+1, -1.578_292_923_981_551_5),
    (3.0e+1, 8.057_800_136_563_99),
    (1.0e+2, 8.797_216_523_178_722e1),
    (1.0e+3, 2.034_546_428_038_031_5e3),
    (1.0e+4, 3.186_192_383_083_582e4),
    (1.0e+5, 4.337_520_272_291_708e5),
    (1.0e+6, 5.488_816_353_078_403_5e6),
    (1.0e+7, 6.640_109_253_004_579e7),
];

pub const FIRST_GRAM_POINT: f64 = 1.784_559_954_041_086e1;

pub const Z: &[(f64, f64)] = &[
    (1.0e+0, -7.363_054_628_673_177e-1),
    (3.0e+0, -5.385_471_385_417_072e-1),
    (5.0e+0, -7.388_634_282_752_647e-1),
    (9.5e+0, -1.518_100_378_313_744_8),
    (1.0e+1, -1.549_194_546_181_022_4),
    (1.2e+1, -1.259_888_834_124_472_3),
    (2.0e+1, 1.147_842_412_185_197_3),
    (3.55e+1, 2.933_518_074_850_469),
    (5.0e+1, -3.407_350_059_550_25e-1),
    (7.77e1, -8.436_451_260_500_33e-1),
    (1.0e+2, 2.692_697_056_664_463_7),
    (1.5e+2, -9.101_092_326_740_359e-2),
    (1.999e2, 5.819_488_059_669_554),
    (2.0e+2, 5.589_783_623_150_109),
    (2.5e+2, -9.186_334_183_561_524e-1),
    (5.0e+2, 1.472_447_851_055_085_4),
    (1.0e+3, 9.977_946_375_215_866e-1),
    (3.333_3e3, 2.240_308_826_161_95),
    (1.0e+4, -3.413_947_242_312_085_4e-1),
    (5.43215e+4, 1.031_356_735_076_427_7),
    (1.0e+5, 5.879_592_468_681_765),
    (1.0e+6, -2.806_133_878_430_698_4),
    (1.0e+7, 1.435_255_035_622_201_4e1),
];

pub const ZEROS: &[f64] = &[
    1.413_472_514_173_469_5e1,
    2.102_203_963_877_155_6e1,
    2.501_085_758_014_569e1,
    3.042_487_612_585_951_2e1,
    3.293_506_158_773_919e1,
    3.758_617_815_882_567_5e1,
    4.091_871_901_214_75e1,
    4.332_707_328_091_5e1,
    4.800_515_088_116_716e1,
    4.977_383_247_767_23e1,
    5.297_032_147_771_446_4e1,
    5.644_624_769_706_339e1,
    5.934_704_400_260_235e1,
    6.083_177_852_460_981e1,
    6.511_254_404_808_16e1,
    6.707_981_052_949_417e1,
    6.954_640_171_117_398e1,
    7.206_715_767_448_19e1,
    7.570_469_069_908_393e1,
    7.714_484_006_887_48e1,
    7.933_737_502_024_937e1,
    8.291_038_085_408_603e1,
    8.473_549_298_051_705e1,
    8.742_527_461_312_523e1,
    8.880_911_120_763_446e1,
    9.249_189_927_055_849e1,
    9.465_134_404_051_989e1,
    9.587_063_422_824_531e1,
    9.883_119_421_819_369e1,
    1.013_178_510_057_313_8e2,
];

pub const ZERO_COUNTS: &[(f64, f64, usize)] = &[(10000.0, 10100.0, 118), (100000.0, 100050.0, 77)];

pub const EULER_GAMMA: f64 = 5.772_156_649_015_329e-1;
