/// Generalized binomial coefficient: `0` for `b < 0`, otherwise the
/// polynomial value `a (a-1) ... (a-b+1) / b!`, valid for negative `a`.
pub fn binomial(a: i64, b: i64) -> i128 {
    if b < 0 {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..b as i128 {
        // acc * (a - i) is divisible by i + 1 at every step
        acc = acc * (a as i128 - i) / (i + 1);
    }
    acc
}
