/* Generated by sptrsv-rewrite. Do not edit. */

void level0_part0(double *restrict x, const double *restrict b)
{
    x[0] = 0.5*b[0];
    x[1] = 0.16666666666666666*b[0] + 0.3333333333333333*b[1];
    x[2] = 0.041666666666666664*b[0] + 0.08333333333333333*b[1] + 0.25*b[2];
    x[3] = 0.020833333333333332*b[0] + 0.041666666666666664*b[1] + 0.125*b[2] + 0.5*b[3];
    x[4] = 0.006944444444444444*b[0] + 0.013888888888888888*b[1] + 0.041666666666666664*b[2] + 0.16666666666666666*b[3] + 0.3333333333333333*b[4];
    x[5] = -0.029513888888888888*b[0] + 0.003472222222222222*b[1] + 0.010416666666666666*b[2] + 0.041666666666666664*b[3] + 0.08333333333333333*b[4] + 0.25*b[5];
    x[6] = -0.014756944444444444*b[0] + 0.001736111111111111*b[1] + 0.005208333333333333*b[2] + 0.020833333333333332*b[3] + 0.041666666666666664*b[4] + 0.125*b[5] + 0.5*b[6];
    x[7] = -0.004918981481481481*b[0] + 0.0005787037037037037*b[1] + 0.001736111111111111*b[2] + 0.006944444444444444*b[3] + 0.013888888888888888*b[4] + 0.041666666666666664*b[5] + 0.16666666666666666*b[6] + 0.3333333333333333*b[7];
    x[8] = -0.0012297453703703702*b[0] + 0.00014467592592592592*b[1] + 0.00043402777777777775*b[2] + 0.001736111111111111*b[3] + 0.003472222222222222*b[4] + 0.010416666666666666*b[5] + 0.041666666666666664*b[6] + 0.08333333333333333*b[7] + 0.25*b[8];
}

void level1_part0(double *restrict x, const double *restrict b)
{
    x[9] = 0.5*b[9] + 0.5*x[8];
    x[10] = 0.16666666666666666*b[9] + 0.3333333333333333*b[10] + -0.08333333333333333*x[5] + 0.16666666666666666*x[8];
    x[11] = 0.041666666666666664*b[9] + 0.08333333333333333*b[10] + 0.25*b[11] + -0.020833333333333332*x[5] + 0.041666666666666664*x[8];
    x[12] = 0.020833333333333332*b[9] + 0.041666666666666664*b[10] + 0.125*b[11] + 0.5*b[12] + -0.010416666666666666*x[5] + 0.020833333333333332*x[8];
    x[13] = 0.006944444444444444*b[9] + 0.013888888888888888*b[10] + 0.041666666666666664*b[11] + 0.16666666666666666*b[12] + 0.3333333333333333*b[13] + -0.003472222222222222*x[5] + 0.006944444444444444*x[8];
    x[14] = 0.001736111111111111*b[9] + 0.003472222222222222*b[10] + 0.010416666666666666*b[11] + 0.041666666666666664*b[12] + 0.08333333333333333*b[13] + 0.25*b[14] + -0.0008680555555555555*x[5] + 0.001736111111111111*x[8];
    x[15] = -0.019965277777777776*b[9] + -0.03993055555555555*b[10] + 0.005208333333333333*b[11] + 0.020833333333333332*b[12] + 0.041666666666666664*b[13] + 0.125*b[14] + 0.5*b[15] + 0.009982638888888888*x[5] + -0.019965277777777776*x[8];
    x[16] = -0.006655092592592592*b[9] + -0.013310185185185184*b[10] + 0.001736111111111111*b[11] + 0.006944444444444444*b[12] + 0.013888888888888888*b[13] + 0.041666666666666664*b[14] + 0.16666666666666666*b[15] + 0.3333333333333333*b[16] + 0.003327546296296296*x[5] + -0.006655092592592592*x[8];
    x[17] = -0.001663773148148148*b[9] + -0.003327546296296296*b[10] + 0.00043402777777777775*b[11] + 0.001736111111111111*b[12] + 0.003472222222222222*b[13] + 0.010416666666666666*b[14] + 0.041666666666666664*b[15] + 0.08333333333333333*b[16] + 0.25*b[17] + 0.000831886574074074*x[5] + -0.001663773148148148*x[8];
}

void level2_part0(double *restrict x, const double *restrict b)
{
    x[18] = 0.5*b[18] + 0.5*x[17];
    x[19] = 0.16666666666666666*b[18] + 0.3333333333333333*b[19] + 0.16666666666666666*x[17];
    x[20] = 0.041666666666666664*b[18] + 0.08333333333333333*b[19] + 0.25*b[20] + -0.0625*x[15] + 0.041666666666666664*x[17];
    x[21] = 0.020833333333333332*b[18] + 0.041666666666666664*b[19] + 0.125*b[20] + 0.5*b[21] + -0.03125*x[15] + 0.020833333333333332*x[17];
    x[22] = 0.006944444444444444*b[18] + 0.013888888888888888*b[19] + 0.041666666666666664*b[20] + 0.16666666666666666*b[21] + 0.3333333333333333*b[22] + -0.010416666666666666*x[15] + 0.006944444444444444*x[17];
    x[23] = 0.001736111111111111*b[18] + 0.003472222222222222*b[19] + 0.010416666666666666*b[20] + 0.041666666666666664*b[21] + 0.08333333333333333*b[22] + 0.25*b[23] + -0.0026041666666666665*x[15] + 0.001736111111111111*x[17];
    x[24] = 0.0008680555555555555*b[18] + 0.001736111111111111*b[19] + 0.005208333333333333*b[20] + 0.020833333333333332*b[21] + 0.041666666666666664*b[22] + 0.125*b[23] + 0.5*b[24] + -0.0013020833333333333*x[15] + 0.0008680555555555555*x[17];
    x[25] = -0.00318287037037037*b[18] + -0.00636574074074074*b[19] + -0.01909722222222222*b[20] + 0.006944444444444444*b[21] + 0.013888888888888888*b[22] + 0.041666666666666664*b[23] + 0.16666666666666666*b[24] + 0.3333333333333333*b[25] + 0.004774305555555555*x[15] + -0.00318287037037037*x[17];
    x[26] = -0.0007957175925925925*b[18] + -0.001591435185185185*b[19] + -0.004774305555555555*b[20] + 0.001736111111111111*b[21] + 0.003472222222222222*b[22] + 0.010416666666666666*b[23] + 0.041666666666666664*b[24] + 0.08333333333333333*b[25] + 0.25*b[26] + 0.0011935763888888888*x[15] + -0.0007957175925925925*x[17];
}

void level3_part0(double *restrict x, const double *restrict b)
{
    x[27] = 0.5*b[27] + 0.5*x[26];
    x[28] = 0.16666666666666666*b[27] + 0.3333333333333333*b[28] + 0.16666666666666666*x[26];
    x[29] = 0.041666666666666664*b[27] + 0.08333333333333333*b[28] + 0.25*b[29] + 0.041666666666666664*x[26];
    x[30] = 0.020833333333333332*b[27] + 0.041666666666666664*b[28] + 0.125*b[29] + 0.5*b[30] + -0.125*x[25] + 0.020833333333333332*x[26];
    x[31] = 0.006944444444444444*b[27] + 0.013888888888888888*b[28] + 0.041666666666666664*b[29] + 0.16666666666666666*b[30] + 0.3333333333333333*b[31] + -0.041666666666666664*x[25] + 0.006944444444444444*x[26];
    x[32] = 0.001736111111111111*b[27] + 0.003472222222222222*b[28] + 0.010416666666666666*b[29] + 0.041666666666666664*b[30] + 0.08333333333333333*b[31] + 0.25*b[32] + -0.010416666666666666*x[25] + 0.001736111111111111*x[26];
    x[33] = 0.0008680555555555555*b[27] + 0.001736111111111111*b[28] + 0.005208333333333333*b[29] + 0.020833333333333332*b[30] + 0.041666666666666664*b[31] + 0.125*b[32] + 0.5*b[33] + -0.005208333333333333*x[25] + 0.0008680555555555555*x[26];
    x[34] = 0.00028935185185185184*b[27] + 0.0005787037037037037*b[28] + 0.001736111111111111*b[29] + 0.006944444444444444*b[30] + 0.013888888888888888*b[31] + 0.041666666666666664*b[32] + 0.16666666666666666*b[33] + 0.3333333333333333*b[34] + -0.001736111111111111*x[25] + 0.00028935185185185184*x[26];
    x[35] = -0.0012297453703703702*b[27] + -0.0024594907407407404*b[28] + -0.007378472222222222*b[29] + -0.029513888888888888*b[30] + 0.003472222222222222*b[31] + 0.010416666666666666*b[32] + 0.041666666666666664*b[33] + 0.08333333333333333*b[34] + 0.25*b[35] + 0.007378472222222222*x[25] + -0.0012297453703703702*x[26];
}

void level4_part0(double *restrict x, const double *restrict b)
{
    x[36] = 0.5*b[36] + 0.5*x[35];
    x[37] = 0.16666666666666666*b[36] + 0.3333333333333333*b[37] + 0.16666666666666666*x[35];
    x[38] = 0.041666666666666664*b[36] + 0.08333333333333333*b[37] + 0.25*b[38] + 0.041666666666666664*x[35];
    x[39] = 0.020833333333333332*b[36] + 0.041666666666666664*b[37] + 0.125*b[38] + 0.5*b[39] + 0.020833333333333332*x[35];
}
