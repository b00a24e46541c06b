//! CIE 1924 photopic luminous efficiency function, 5 nm steps from 380 nm to 780 nm.

pub(crate) const PHOTOPIC_5NM: [(f64, f64); 81] = [
    (380.0, 3.9e-05),
    (385.0, 6.4e-05),
    (390.0, 0.00012),
    (395.0, 0.000217),
    (400.0, 0.000396),
    (405.0, 0.00064),
    (410.0, 0.00121),
    (415.0, 0.00218),
    (420.0, 0.004),
    (425.0, 0.0073),
    (430.0, 0.0116),
    (435.0, 0.01684),
    (440.0, 0.023),
    (445.0, 0.0298),
    (450.0, 0.038),
    (455.0, 0.048),
    (460.0, 0.06),
    (465.0, 0.0739),
    (470.0, 0.09098),
    (475.0, 0.1126),
    (480.0, 0.13902),
    (485.0, 0.1693),
    (490.0, 0.20802),
    (495.0, 0.2586),
    (500.0, 0.323),
    (505.0, 0.4073),
    (510.0, 0.503),
    (515.0, 0.6082),
    (520.0, 0.71),
    (525.0, 0.7932),
    (530.0, 0.862),
    (535.0, 0.9148501),
    (540.0, 0.954),
    (545.0, 0.9803),
    (550.0, 0.9949501),
    (555.0, 1.0),
    (560.0, 0.995),
    (565.0, 0.9786),
    (570.0, 0.952),
    (575.0, 0.9154),
    (580.0, 0.87),
    (585.0, 0.8163),
    (590.0, 0.757),
    (595.0, 0.6949),
    (600.0, 0.631),
    (605.0, 0.5668),
    (610.0, 0.503),
    (615.0, 0.4412),
    (620.0, 0.381),
    (625.0, 0.321),
    (630.0, 0.265),
    (635.0, 0.217),
    (640.0, 0.175),
    (645.0, 0.1382),
    (650.0, 0.107),
    (655.0, 0.0816),
    (660.0, 0.061),
    (665.0, 0.04458),
    (670.0, 0.032),
    (675.0, 0.0232),
    (680.0, 0.017),
    (685.0, 0.01192),
    (690.0, 0.00821),
    (695.0, 0.005723),
    (700.0, 0.004102),
    (705.0, 0.002929),
    (710.0, 0.002091),
    (715.0, 0.001484),
    (720.0, 0.001047),
    (725.0, 0.00074),
    (730.0, 0.00052),
    (735.0, 0.0003611),
    (740.0, 0.0002492),
    (745.0, 0.0001719),
    (750.0, 0.00012),
    (755.0, 8.48e-05),
    (760.0, 6e-05),
    (765.0, 4.24e-05),
    (770.0, 3e-05),
    (775.0, 2.12e-05),
    (780.0, 1.499e-05),
];
