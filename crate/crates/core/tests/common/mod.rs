//! Reference values from 40-digit evaluations, rounded to 25 significant digits.
#![allow(dead_code)]
#![allow(clippy::excessive_precision)]

/// `(x, Ai(x), Ai'(x))`
pub const AIRY: [(f64, f64, f64); 10] = [
    (-20.0, -0.1764061270779846895901923, 0.8928628567364712383984099),
    (-12.5, -0.2762745613811602482251711, -0.4193313304195051644060211),
    (-7.3, 0.3357703705151472769671717, -0.1800958044832936598516171),
    (-3.1, -0.4043822223909783415888631, 0.1948204460039787923463706),
    (-1.0, 0.5355608832923521187995166, -0.01016056711664520939504547),
    (0.0, 0.3550280538878172392600632, -0.2588194037928067984051836),
    (0.7, 0.1891624003981500821795426, -0.1998511915822804810519181),
    (2.5, 0.01572592338047048999526605, -0.0262508810359032303648955),
    (6.0, 0.000009947694360252889570238848, -0.00002476520039703495475418183),
    (10.0, 1.104753255289868593355021e-10, -3.520633676738923636620645e-10),
];

/// `(b, z, J_b(z))`
pub const BESSEL: [(u32, f64, f64); 10] = [
    (0, 0.5, 0.9384698072408129042284047),
    (1, 2.3, 0.5398725326043136971474354),
    (2, 5.0, 0.04656511627775221553230328),
    (3, 7.7, -0.2786970934097018415690988),
    (0, 11.9, 0.025049441699589645079514),
    (2, 12.1, -0.1053277609418362068246371),
    (1, 18.0, -0.1879948854880695940066254),
    (5, 25.0, -0.06600799539842299339204816),
    (0, 40.0, 0.007366890584237289553531736),
    (4, 60.0, -0.09706475469983292915758576),
];
