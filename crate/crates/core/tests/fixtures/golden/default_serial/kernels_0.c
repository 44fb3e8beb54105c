/* Generated by sptrsv-rewrite. Do not edit. */

void level0_part0(double *restrict x, const double *restrict b)
{
    x[0] = 0.5*b[0];
    x[3] = 0.03125*b[0] + -0.0625*b[1] + -0.125*b[2] + 0.25*b[3];
}

void level1_part0(double *restrict x, const double *restrict b)
{
    x[1] = 0.25*b[1] + -0.25*x[0];
}

void level2_part0(double *restrict x, const double *restrict b)
{
    x[2] = 0.5*b[2] + 0.5*x[1];
}
