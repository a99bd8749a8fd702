// Generated by the trace_tables example (40000 replications, T = 1000). Do not edit by hand.

static QUANTILES: [[[f64; 27]; MAX_DIM]; 5] = [
    [
        [0.0000, 0.0002, 0.0014, 0.0056, 0.0229, 0.0525, 0.0936, 0.1461, 0.2128, 0.2903, 0.3798, 0.4829, 0.5951, 0.7304, 0.8868, 1.0665, 1.2762, 1.5256, 1.8579, 2.2896, 2.8821, 3.3443, 4.0658, 5.2170, 6.8860, 8.1856, 11.2633],
        [1.1020, 1.2999, 1.6485, 2.0304, 2.5527, 2.9887, 3.3716, 3.7289, 4.0768, 4.4301, 4.7837, 5.1498, 5.5206, 5.9054, 6.3195, 6.7763, 7.2726, 7.8311, 8.5075, 9.3503, 10.4913, 11.2888, 12.4173, 14.1886, 16.4068, 18.1278, 22.2221],
        [5.6475, 6.2305, 7.1972, 8.0946, 9.2468, 10.1158, 10.8400, 11.4968, 12.1101, 12.7311, 13.2991, 13.9028, 14.4913, 15.1143, 15.7753, 16.4701, 17.2134, 18.0446, 19.0197, 20.2361, 21.7569, 22.8627, 24.1997, 26.3560, 29.3109, 31.4721, 36.2836],
        [14.2455, 15.2271, 16.7604, 18.2096, 19.9654, 21.3012, 22.3760, 23.3206, 24.1905, 25.0322, 25.8471, 26.6448, 27.4758, 28.3272, 29.1711, 30.0862, 31.0837, 32.2160, 33.4853, 35.0827, 37.0606, 38.4211, 40.2431, 43.0891, 46.7467, 49.3694, 54.9737],
        [26.8530, 28.3068, 30.3119, 32.2072, 34.6065, 36.3460, 37.8211, 39.0360, 40.2184, 41.2933, 42.3676, 43.4283, 44.4525, 45.5627, 46.6991, 47.8585, 49.0995, 50.5084, 51.9811, 53.8616, 56.3692, 57.9910, 60.1019, 63.4688, 67.5475, 70.4482, 77.2000],
        [43.0132, 44.9085, 47.7047, 50.3935, 53.4754, 55.6321, 57.4320, 58.9954, 60.4660, 61.7666, 63.0427, 64.3334, 65.5768, 66.8407, 68.1967, 69.5782, 71.0810, 72.7035, 74.5439, 76.7588, 79.5947, 81.5565, 84.0812, 87.8484, 92.6873, 96.2728, 103.5295],
        [64.0965, 66.1585, 69.4089, 72.6133, 76.2248, 78.8702, 81.0634, 82.8885, 84.5636, 86.2016, 87.6951, 89.2412, 90.7745, 92.3127, 93.8710, 95.5013, 97.2576, 99.2183, 101.3854, 103.9826, 107.2514, 109.4957, 112.5113, 117.1543, 122.3315, 125.9967, 134.4942],
        [89.1907, 91.8440, 95.5093, 99.0404, 103.3499, 106.3271, 108.7318, 110.8562, 112.8172, 114.6766, 116.4441, 118.1835, 119.8638, 121.5926, 123.3448, 125.2666, 127.2454, 129.5021, 131.9567, 134.9285, 138.6748, 141.0987, 144.5226, 149.9433, 156.1431, 160.5936, 169.3142],
    ],
    [
        [0.4799, 0.5888, 0.7828, 1.0004, 1.3355, 1.6177, 1.8694, 2.1143, 2.3599, 2.6086, 2.8644, 3.1318, 3.4110, 3.7228, 4.0665, 4.4250, 4.8359, 5.3175, 5.8902, 6.5832, 7.5493, 8.1877, 9.1625, 10.6473, 12.7771, 14.3521, 18.0101],
        [4.1004, 4.5609, 5.2527, 5.9796, 6.9332, 7.6361, 8.2701, 8.8424, 9.3933, 9.9195, 10.4284, 10.9408, 11.4794, 12.0092, 12.5727, 13.1763, 13.8629, 14.6054, 15.4529, 16.5623, 17.9475, 18.8854, 20.2411, 22.4135, 25.0651, 27.0637, 30.5592],
        [11.4859, 12.4530, 13.8486, 15.1171, 16.7087, 17.8573, 18.8232, 19.6862, 20.4784, 21.2623, 22.0160, 22.7365, 23.4806, 24.2811, 25.0894, 25.9449, 26.8350, 27.8546, 29.0102, 30.4108, 32.2417, 33.4923, 35.2335, 37.8505, 41.1539, 43.3042, 48.8278],
        [23.0292, 24.5289, 26.4657, 28.2796, 30.4508, 31.9898, 33.2656, 34.4280, 35.5408, 36.5729, 37.5372, 38.5000, 39.4793, 40.4978, 41.5318, 42.6335, 43.8251, 45.1067, 46.6115, 48.3832, 50.7581, 52.2135, 54.2209, 57.4001, 61.2622, 63.8990, 70.6400],
        [38.6958, 40.1802, 43.0032, 45.4040, 48.2413, 50.2520, 51.9054, 53.3797, 54.7043, 55.9770, 57.1695, 58.3907, 59.5845, 60.7834, 62.0474, 63.3428, 64.7265, 66.2563, 68.0098, 70.0686, 72.8544, 74.6951, 77.1717, 80.9497, 85.5191, 88.9410, 95.3322],
        [58.4194, 60.5153, 63.7941, 66.7716, 70.1909, 72.6233, 74.6549, 76.3587, 77.9233, 79.4377, 80.8896, 82.2770, 83.7584, 85.1750, 86.6556, 88.2113, 89.8345, 91.6438, 93.7475, 96.2797, 99.4039, 101.4629, 104.1592, 108.2681, 113.9289, 117.4661, 125.0734],
        [81.6196, 84.2029, 88.3959, 91.8258, 96.0413, 98.9049, 101.2029, 103.2379, 105.0743, 106.8382, 108.4990, 110.1329, 111.7446, 113.4514, 115.1633, 116.9389, 118.8272, 120.9474, 123.3247, 126.1438, 129.7329, 132.1087, 135.0879, 139.8922, 145.4264, 149.5990, 159.2619],
        [109.4515, 112.8989, 117.2492, 121.2208, 125.9745, 129.1655, 131.8903, 134.2213, 136.3467, 138.3706, 140.2325, 142.0995, 143.9895, 145.8366, 147.7144, 149.8227, 151.9413, 154.2663, 156.8589, 160.0012, 163.9882, 166.6731, 170.1836, 175.6992, 182.1704, 186.6042, 196.0058],
    ],
    [
        [0.0000, 0.0001, 0.0010, 0.0041, 0.0161, 0.0372, 0.0662, 0.1044, 0.1506, 0.2082, 0.2787, 0.3584, 0.4533, 0.5668, 0.7062, 0.8752, 1.0848, 1.3404, 1.6588, 2.0938, 2.7345, 3.1971, 3.8760, 5.0719, 6.7006, 7.9622, 10.4970],
        [2.0289, 2.3215, 2.8184, 3.3437, 4.0558, 4.6094, 5.1022, 5.5487, 5.9715, 6.3854, 6.8127, 7.2423, 7.6857, 8.1437, 8.6356, 9.1778, 9.7529, 10.4100, 11.2115, 12.1746, 13.4804, 14.3337, 15.4891, 17.5063, 20.0926, 21.9291, 26.4079],
        [8.6022, 9.2374, 10.3323, 11.4444, 12.8080, 13.8310, 14.7096, 15.4839, 16.1901, 16.8822, 17.5429, 18.2171, 18.8943, 19.6185, 20.3505, 21.1492, 22.0221, 22.9982, 24.0787, 25.3638, 27.0854, 28.2700, 29.9306, 32.5172, 35.8594, 38.1442, 43.1822],
        [19.1583, 20.4053, 22.1405, 23.7018, 25.7053, 27.1459, 28.3091, 29.4108, 30.4191, 31.3898, 32.2921, 33.1745, 34.0780, 34.9778, 35.9947, 37.0241, 38.1576, 39.3493, 40.8191, 42.5181, 44.6780, 46.0811, 48.0849, 51.1205, 54.8995, 57.4152, 63.0398],
        [34.0029, 35.3641, 37.6959, 39.9074, 42.6013, 44.4289, 45.9570, 47.3205, 48.5332, 49.6799, 50.8148, 51.9839, 53.0750, 54.2481, 55.4723, 56.7562, 58.0864, 59.5580, 61.2434, 63.2676, 65.9189, 67.6926, 69.9373, 73.5407, 77.8506, 80.5944, 87.1482],
        [52.5049, 54.4870, 57.5799, 60.3244, 63.5894, 65.8730, 67.7385, 69.4075, 70.9105, 72.2848, 73.6655, 75.0066, 76.3908, 77.7838, 79.1805, 80.6645, 82.2505, 84.0656, 86.0946, 88.4302, 91.4870, 93.4711, 96.0131, 100.0173, 104.7024, 108.2444, 115.5710],
        [74.8875, 77.6517, 81.1974, 84.6002, 88.6817, 91.3241, 93.4431, 95.4330, 97.1820, 98.8315, 100.3652, 101.9820, 103.5694, 105.1812, 106.8312, 108.5364, 110.3819, 112.3533, 114.6400, 117.3795, 120.8727, 122.9614, 125.9359, 130.7266, 136.1578, 140.8516, 148.9230],
        [102.4641, 105.0021, 109.4322, 112.9821, 117.4677, 120.5832, 123.1502, 125.4401, 127.4519, 129.4266, 131.2516, 133.0054, 134.8223, 136.5804, 138.4631, 140.3702, 142.3737, 144.6525, 147.2473, 150.1444, 153.9080, 156.4588, 159.7889, 165.2500, 171.3913, 175.6280, 184.9092],
    ],
    [
        [1.3683, 1.5524, 1.8909, 2.2772, 2.8056, 3.2198, 3.5877, 3.9440, 4.3005, 4.6361, 4.9743, 5.3255, 5.6893, 6.0806, 6.4849, 6.9362, 7.4205, 7.9782, 8.6779, 9.5138, 10.6609, 11.4260, 12.4946, 14.3098, 16.6282, 18.3231, 22.3884],
        [6.8145, 7.3722, 8.3583, 9.3337, 10.5370, 11.3972, 12.1521, 12.8471, 13.4751, 14.0676, 14.6882, 15.2932, 15.9026, 16.5344, 17.2156, 17.9218, 18.7087, 19.6108, 20.6065, 21.8418, 23.4618, 24.5646, 26.0129, 28.4245, 31.2744, 33.5163, 37.8412],
        [16.5123, 17.4701, 19.0923, 20.6121, 22.3980, 23.7142, 24.7990, 25.7851, 26.6515, 27.5449, 28.3839, 29.2408, 30.1052, 30.9734, 31.8696, 32.8103, 33.8101, 34.8870, 36.1661, 37.7181, 39.7201, 41.0463, 42.9658, 45.9178, 49.4204, 51.6011, 57.4032],
        [30.2111, 31.5993, 33.7460, 35.7864, 38.2328, 39.9739, 41.4364, 42.7248, 43.8605, 44.9715, 46.0458, 47.1376, 48.1933, 49.2574, 50.3403, 51.4972, 52.7836, 54.1885, 55.8604, 57.7952, 60.2799, 61.9886, 64.0248, 67.5706, 71.7292, 74.5226, 80.5652],
        [47.7478, 49.6813, 52.5715, 55.0615, 58.2495, 60.3630, 62.1943, 63.7438, 65.1446, 66.5226, 67.8286, 69.1420, 70.3727, 71.6431, 72.9850, 74.3635, 75.8593, 77.5162, 79.4066, 81.6923, 84.6007, 86.4856, 88.9452, 92.8569, 97.9867, 101.3103, 108.3541],
        [69.5139, 71.6717, 75.1907, 78.3400, 82.1465, 84.7560, 86.8726, 88.7863, 90.3922, 92.0056, 93.5079, 95.0140, 96.4860, 97.9935, 99.5613, 101.1828, 102.9529, 104.8443, 106.9987, 109.5245, 112.9162, 115.2670, 118.2224, 122.8729, 128.5620, 132.4055, 140.9437],
        [95.2183, 97.9652, 101.9573, 105.5917, 110.0468, 113.0541, 115.5176, 117.6041, 119.6022, 121.4176, 123.1688, 124.8834, 126.6541, 128.3421, 130.1518, 132.0470, 134.0489, 136.2845, 138.7095, 141.5631, 145.3829, 147.8431, 151.2258, 156.2647, 162.6606, 166.8113, 177.3078],
        [125.1092, 128.3234, 132.9726, 137.1690, 142.1144, 145.4731, 148.3448, 150.7344, 152.9944, 155.0725, 157.0425, 158.9777, 160.9216, 162.8028, 164.8608, 166.8846, 169.1608, 171.5540, 174.2504, 177.5119, 181.5891, 184.4445, 187.9161, 193.5687, 200.3479, 204.7349, 213.9326],
    ],
    [
        [0.0000, 0.0002, 0.0009, 0.0039, 0.0162, 0.0360, 0.0637, 0.1004, 0.1461, 0.2033, 0.2736, 0.3567, 0.4512, 0.5668, 0.6997, 0.8639, 1.0681, 1.3239, 1.6384, 2.0745, 2.6859, 3.1558, 3.8411, 5.0694, 6.6909, 8.0083, 11.2937],
        [3.0552, 3.4550, 4.0958, 4.7110, 5.5596, 6.2280, 6.8486, 7.3907, 7.8956, 8.3738, 8.8539, 9.3408, 9.8470, 10.3575, 10.9243, 11.5164, 12.1509, 12.8917, 13.7214, 14.7789, 16.1364, 17.1141, 18.3848, 20.4996, 23.2782, 25.4069, 29.6659],
        [11.2168, 12.1593, 13.5855, 14.8152, 16.3560, 17.4613, 18.4627, 19.3097, 20.1111, 20.9046, 21.6550, 22.3991, 23.1851, 23.9615, 24.7519, 25.6168, 26.5484, 27.5819, 28.7462, 30.2712, 32.1394, 33.3726, 35.1133, 37.7157, 40.9906, 43.5446, 49.3457],
        [23.8593, 25.1891, 27.1735, 28.9661, 31.2570, 32.8981, 34.2025, 35.4080, 36.4533, 37.5096, 38.4811, 39.4342, 40.4333, 41.4208, 42.4696, 43.5827, 44.7667, 46.0336, 47.5357, 49.3413, 51.6719, 53.1743, 55.1839, 58.3917, 62.5216, 65.2966, 71.4872],
        [40.3232, 42.1262, 44.7926, 47.1926, 50.0793, 52.2206, 53.8737, 55.3843, 56.7750, 58.0191, 59.2643, 60.4629, 61.7051, 62.9655, 64.1842, 65.4396, 66.8815, 68.4391, 70.2135, 72.4295, 75.2403, 77.0426, 79.6590, 83.4756, 88.2407, 91.6623, 98.5623],
        [61.5158, 63.5364, 66.8132, 69.6746, 73.2642, 75.6510, 77.6459, 79.4324, 81.0912, 82.6343, 84.1085, 85.5548, 86.9849, 88.4451, 89.9746, 91.5489, 93.2150, 95.1102, 97.2514, 99.6634, 102.7606, 104.9623, 107.7815, 112.1372, 117.3738, 121.4785, 130.3580],
        [86.3026, 88.8054, 92.7021, 96.1694, 100.2335, 103.0800, 105.4679, 107.4916, 109.3584, 111.1465, 112.8813, 114.4931, 116.1765, 117.8178, 119.5068, 121.3474, 123.2936, 125.4439, 127.7710, 130.4642, 134.1184, 136.5993, 139.7886, 144.6419, 150.4962, 154.4213, 162.4186],
        [115.1823, 118.1640, 122.6640, 126.5363, 131.2509, 134.7036, 137.3790, 139.6254, 141.7353, 143.6926, 145.5989, 147.4417, 149.3066, 151.2294, 153.2421, 155.3210, 157.4801, 159.8768, 162.6419, 165.7688, 169.8267, 172.4711, 175.8153, 181.3164, 187.4204, 192.3651, 201.7560],
    ],
];

static MOMENTS: [[[f64; 2]; MAX_DIM]; 5] = [
    [[1.1258, 2.1734], [6.1287, 10.7282], [15.1079, 24.8628], [28.1203, 45.7126], [45.1011, 72.6936], [66.1799, 105.3969], [91.4030, 147.5298], [120.5671, 192.1217]],
    [[4.0383, 6.9646], [12.0610, 19.5666], [24.1051, 38.0759], [40.1395, 63.4687], [60.1731, 93.7862], [84.3636, 130.5492], [112.4311, 173.6532], [144.5956, 222.5521]],
    [[1.0075, 2.0213], [8.3352, 14.6842], [19.5699, 32.5136], [34.7524, 55.7567], [53.7835, 83.9073], [77.0517, 118.6710], [104.2416, 159.6905], [135.3890, 204.0228]],
    [[6.3154, 10.5536], [16.5609, 26.6457], [30.6910, 47.0242], [48.8224, 74.7679], [70.9838, 106.9270], [97.1496, 146.8739], [127.2836, 192.4728], [161.4947, 239.0505]],
    [[1.0006, 2.0487], [10.4787, 18.2786], [23.8114, 39.0600], [41.0547, 64.2784], [62.2836, 97.3866], [87.6306, 134.8484], [116.7894, 176.0569], [150.0759, 225.6252]],
];
