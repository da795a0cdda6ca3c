package shop.util;

public class Log {
    String prefix;
    int level;

    Log tag(String t) {
        prefix = t;
        return this;
    }

    Log info(String message) {
        level = 1;
        return this;
    }

    Log debug(String message) {
        level = 0;
        return this;
    }
}
