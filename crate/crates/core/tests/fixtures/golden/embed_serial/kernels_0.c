/* Generated by sptrsv-rewrite. Do not edit. */

void level0_part0(double *restrict x)
{
    x[0] = 0.5;
    x[3] = 0.53125;
}

void level1_part0(double *restrict x)
{
    x[1] = 0.5 + -0.25*x[0];
}

void level2_part0(double *restrict x)
{
    x[2] = 1.5 + 0.5*x[1];
}
