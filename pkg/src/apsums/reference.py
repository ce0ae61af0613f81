"""Published error tables, transcribed verbatim as decimal strings.

Each entry maps a table number to its exponent, residue class and nine rows
``(x, pi, approx, error_pct)``.  Values are kept exactly as printed, including
the sign of the Table 11 row at x = 5e5.
"""

TABLE_GRID = (10**4, 5 * 10**4, 10**5, 5 * 10**5, 10**6, 5 * 10**6, 10**7, 5 * 10**7, 10**8)

PUBLISHED_TABLES = {
    1: ("1", 4, 1, (
        (10000, 609, "515", "15.43514"),
        (50000, 2549, "2025", "20.55708"),
        (100000, 4783, "4418", "7.63119"),
        (500000, 20731, "19668", "5.12759"),
        (1000000, 39175, "36628", "6.50160"),
        (5000000, 174193, "165373", "5.06335"),
        (10000000, 332180, "323048", "2.74911"),
        (50000000, 1500452, "1475230", "1.68096"),
        (100000000, 2880504, "2863281", "0.59792"),
    )),
    2: ("1", 4, 3, (
        (10000, 619, "543", "12.27787"),
        (50000, 2583, "2411", "6.65892"),
        (100000, 4808, "4786", "0.45757"),
        (500000, 20806, "20643", "0.78343"),
        (1000000, 39322, "39497", "-0.44504"),
        (5000000, 174319, "170667", "2.09501"),
        (10000000, 332398, "319819", "3.78432"),
        (50000000, 1500681, "1516507", "-1.05459"),
        (100000000, 2880950, "2873113", "0.27203"),
    )),
    3: ("1", 5, 1, (
        (10000, 306, "215", "29.73856"),
        (50000, 1274, "1181", "7.29984"),
        (100000, 2387, "2536", "-6.24214"),
        (500000, 10386, "10631", "-2.35894"),
        (1000000, 19617, "18470", "5.84697"),
        (5000000, 87062, "81830", "6.00951"),
        (10000000, 166104, "156148", "5.99384"),
        (50000000, 750340, "763457", "-1.74814"),
        (100000000, 1440298, "1448386", "-0.56155"),
    )),
    4: ("1", 5, 3, (
        (10000, 310, "291", "6.12903"),
        (50000, 1290, "1036", "19.68992"),
        (100000, 2402, "2644", "-10.07494"),
        (500000, 10382, "10539", "-1.51223"),
        (1000000, 19665, "18146", "7.72438"),
        (5000000, 87216, "90461", "-3.72065"),
        (10000000, 166230, "156456", "5.87981"),
        (50000000, 750395, "753820", "-0.45643"),
        (100000000, 1440474, "1436510", "0.27519"),
    )),
    5: ("1/2", 4, 1, (
        (10000, 609, "617.62512", "-1.41628"),
        (50000, 2549, "2477.64505", "2.79933"),
        (100000, 4783, "4659.83812", "2.57499"),
        (500000, 20731, "20125.89212", "2.91886"),
        (1000000, 39175, "38904.00140", "0.69176"),
        (5000000, 174193, "173246.23939", "0.54351"),
        (10000000, 332180, "329252.45078", "0.88131"),
        (50000000, 1500452, "1492885.30185", "0.50429"),
        (100000000, 2880504, "2873027.62482", "0.25955"),
    )),
    6: ("1/2", 4, 3, (
        (10000, 619, "591.60159", "4.42624"),
        (50000, 2583, "2502.18366", "3.12878"),
        (100000, 4808, "4833.35209", "-0.52729"),
        (500000, 20806, "20951.89316", "-0.70121"),
        (1000000, 39322, "39178.87051", "0.36399"),
        (5000000, 174319, "173924.73741", "0.22617"),
        (10000000, 332398, "331806.98445", "0.17780"),
        (50000000, 1500681, "1502046.79913", "-0.09101"),
        (100000000, 2880950, "2879155.53993", "0.06229"),
    )),
    7: ("1/2", 5, 1, (
        (10000, 306, "290.30286", "5.12978"),
        (50000, 1274, "1243.85408", "2.36624"),
        (100000, 2387, "2288.69057", "4.11853"),
        (500000, 10386, "10309.63049", "0.73531"),
        (1000000, 19617, "19616.30635", "0.00354"),
        (5000000, 87062, "87036.61969", "0.02915"),
        (10000000, 166104, "164310.69864", "1.07963"),
        (50000000, 750340, "752249.09877", "-0.25443"),
        (100000000, 1440298, "1430300.15946", "0.69415"),
    )),
    8: ("1/2", 5, 3, (
        (10000, 310, "321.30898", "-3.64806"),
        (50000, 1290, "1244.44539", "3.53136"),
        (100000, 2402, "2501.69252", "-4.15040"),
        (500000, 10382, "10504.71338", "-1.18198"),
        (1000000, 19665, "19604.34768", "0.30843"),
        (5000000, 87216, "86272.37280", "1.08194"),
        (10000000, 166230, "167998.78804", "-1.06406"),
        (50000000, 750395, "748916.40906", "0.19704"),
        (100000000, 1440474, "1444351.68992", "-0.26920"),
    )),
    9: ("-1/10", 4, 1, (
        (10000, 609, "613.50169", "-0.73919"),
        (50000, 2549, "2562.89963", "-0.54530"),
        (100000, 4783, "4788.03485", "-0.10527"),
        (500000, 20731, "20771.18437", "-0.19384"),
        (1000000, 39175, "39266.51644", "-0.23361"),
        (5000000, 174193, "174232.64634", "-0.02276"),
        (10000000, 332180, "332314.25320", "-0.04042"),
        (50000000, 1500452, "1500545.39963", "-0.00622"),
        (100000000, 2880504, "2880813.47274", "-0.01074"),
    )),
    10: ("-1/10", 4, 3, (
        (10000, 619, "618.68563", "0.05079"),
        (50000, 2583, "2579.32406", "0.14231"),
        (100000, 4808, "4821.56790", "-0.28219"),
        (500000, 20806, "20796.90807", "0.04370"),
        (1000000, 39322, "39305.82276", "0.04114"),
        (5000000, 174319, "174323.13838", "-0.00237"),
        (10000000, 332398, "332477.68215", "-0.02397"),
        (50000000, 1500681, "1500779.09018", "-0.00654"),
        (100000000, 2880950, "2881063.76609", "-0.00395"),
    )),
    11: ("-1/10", 5, 1, (
        (10000, 306, "306.84917", "-0.27750"),
        (50000, 1274, "1284.72538", "-0.84187"),
        (100000, 2387, "2397.35493", "-0.43380"),
        (500000, 10386, "10381.05165", "-0.04764"),
        (1000000, 19617, "19624.30360", "-0.03723"),
        (5000000, 87062, "87119.41013", "-0.06594"),
        (10000000, 166104, "166161.85950", "-0.03483"),
        (50000000, 750340, "750274.35740", "0.00875"),
        (100000000, 1440298, "1440380.00374", "-0.00569"),
    )),
    12: ("-1/10", 5, 3, (
        (10000, 310, "309.65259", "0.11207"),
        (50000, 1290, "1288.73787", "0.09784"),
        (100000, 2402, "2406.10885", "-0.17106"),
        (500000, 10382, "10404.21103", "-0.21394"),
        (1000000, 19665, "19658.64066", "0.03234"),
        (5000000, 87216, "87152.03182", "0.07334"),
        (10000000, 166230, "166229.30179", "0.00042"),
        (50000000, 750395, "750428.14712", "-0.00442"),
        (100000000, 1440474, "1440534.90175", "-0.00423"),
    )),
    13: ("-1/12", 4, 1, (
        (10000, 609, "611.17719", "-0.35750"),
        (50000, 2549, "2558.04851", "-0.35498"),
        (100000, 4783, "4787.40169", "-0.09203"),
        (500000, 20731, "20762.97056", "-0.15422"),
        (1000000, 39175, "39253.59228", "-0.20062"),
        (5000000, 174193, "174211.69780", "-0.01073"),
        (10000000, 332180, "332319.22077", "-0.04191"),
        (50000000, 1500452, "1500497.92446", "-0.00306"),
        (100000000, 2880504, "2880766.12283", "-0.00910"),
    )),
    14: ("-1/12", 4, 3, (
        (10000, 619, "622.36367", "-0.54340"),
        (50000, 2583, "2584.93696", "-0.07499"),
        (100000, 4808, "4816.96821", "-0.18653"),
        (500000, 20806, "20788.86077", "0.08238"),
        (1000000, 39322, "39306.76238", "0.03875"),
        (5000000, 174319, "174325.21822", "-0.00357"),
        (10000000, 332398, "332443.67182", "-0.01374"),
        (50000000, 1500681, "1500833.67573", "-0.01017"),
        (100000000, 2880950, "2881059.64847", "-0.00381"),
    )),
    15: ("-1/12", 5, 1, (
        (10000, 306, "308.32261", "-0.75902"),
        (50000, 1274, "1286.24176", "-0.96089"),
        (100000, 2387, "2392.89814", "-0.24709"),
        (500000, 10386, "10367.25069", "0.18052"),
        (1000000, 19617, "19631.27471", "-0.07277"),
        (5000000, 87062, "87117.75683", "-0.06404"),
        (10000000, 166104, "166145.81965", "-0.02518"),
        (50000000, 750340, "750274.07185", "0.00879"),
        (100000000, 1440298, "1440333.42281", "-0.00246"),
    )),
    16: ("-1/12", 5, 3, (
        (10000, 310, "310.43590", "-0.14061"),
        (50000, 1290, "1290.55374", "-0.04293"),
        (100000, 2402, "2406.74513", "-0.19755"),
        (500000, 10382, "10393.81954", "-0.11385"),
        (1000000, 19665, "19662.29214", "0.01377"),
        (5000000, 87216, "87159.52414", "0.06475"),
        (10000000, 166230, "166209.29782", "0.01245"),
        (50000000, 750395, "750355.12871", "0.00531"),
        (100000000, 1440474, "1440579.59405", "-0.00733"),
    )),
}

# Pooled sign claims: (first table, last table, sign, printed percentage).
PUBLISHED_SIGN_CLAIMS = (
    (1, 4, "positive", "72.22"),
    (5, 8, "positive", "72.22"),
    (9, 12, "negative", "72.22"),
    (13, 16, "negative", "77.78"),
)
