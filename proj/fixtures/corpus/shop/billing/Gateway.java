package shop.billing;

import shop.core.Identified;

public interface Gateway extends Identified {
    boolean charge(Invoice invoice);

    String name();
}
